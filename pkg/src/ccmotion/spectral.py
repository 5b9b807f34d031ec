"""Constituent spectra from the r x r intersection matrices, the rank-4
cubic, closed-form spectral radius bounds and root perturbation."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import poly
from .core import IntersectionTensor
from .errors import (
    DegreeMismatch,
    HypothesisViolated,
    NotClosedUnderPairing,
    NotHomogeneous,
    NotMonic,
    SoundnessError,
    WrongRank,
)


def intersection_matrix(tensor: IntersectionTensor, colors: Iterable[int]) -> np.ndarray:
    """B_I with entries B[t, j] = sum over i in I of p[i, j, t]: the matrix
    of left multiplication by A_I in the basis of adjacency matrices."""
    idx = list(colors)
    return tensor.p[idx].sum(axis=0).T.copy()


@dataclass(frozen=True)
class Spectrum:
    colors: tuple[int, ...]
    k: int
    nontrivial: tuple
    xi: float
    exact: bool
    symmetrized: bool
    charpoly: tuple[int, ...] = field(repr=False)
    reduced: tuple = field(repr=False)  # charpoly with one factor (x - k) removed

    @property
    def color(self):
        return self.colors[0] if len(self.colors) == 1 else self.colors

    @property
    def degenerate(self) -> bool:
        """xi = k: the graph is disconnected or bipartite."""
        return poly.peval(list(self.reduced), self.k) == 0 or poly.peval(list(self.reduced), -self.k) == 0

    @property
    def smallest(self):
        vals = list(self.nontrivial) + [self.k]
        return min(vals)

    def _roots_above(self, x: Fraction) -> int:
        a = list(self.reduced)
        while len(a) > 1 and poly.peval(a, x) == 0:
            a = poly.divide_root(a, x)
        return poly.count_roots(a, lo=x) if len(a) > 1 else 0

    def _roots_below(self, x: Fraction) -> int:
        a = list(self.reduced)
        while len(a) > 1 and poly.peval(a, x) == 0:
            a = poly.divide_root(a, x)
        return poly.count_roots(a, hi=x) if len(a) > 1 else 0

    def xi_at_most(self, bound) -> bool:
        """Exact test of xi <= bound (Sturm counting on the reduced charpoly)."""
        b = Fraction(bound)
        if b < 0:
            return False
        return self._roots_above(b) == 0 and self._roots_below(-b) == 0

    def xi_upper(self) -> Fraction:
        """A rational number certified to be at least xi."""
        if self.exact:
            return Fraction(self.xi)
        eps = Fraction(1, 10**9)
        cand = Fraction(self.xi) + eps
        while not self.xi_at_most(cand):
            eps *= 16
            cand = Fraction(self.xi) + eps
        return cand

    def smallest_is(self, value) -> bool:
        """Exact test that the smallest eigenvalue equals value."""
        v = Fraction(value)
        cp = list(self.charpoly)
        if poly.peval(cp, v) != 0:
            return False
        while poly.peval(cp, v) == 0 and len(cp) > 1:
            cp = poly.divide_root(cp, v)
        return len(cp) == 1 or poly.count_roots(cp, hi=v) == 0

    def smallest_at_least(self, value) -> bool:
        v = Fraction(value)
        cp = list(self.charpoly)
        while len(cp) > 1 and poly.peval(cp, v) == 0:
            cp = poly.divide_root(cp, v)
        return len(cp) == 1 or poly.count_roots(cp, hi=v) == 0

    def to_dict(self) -> dict:
        return {
            "color": list(self.colors) if len(self.colors) > 1 else self.colors[0],
            "k": self.k,
            "nontrivial": [v if isinstance(v, int) else float(v) for v in self.nontrivial],
            "xi": self.xi,
            "exact": self.exact,
            "symmetrized": self.symmetrized,
        }


def _spectrum(tensor: IntersectionTensor, colors: tuple[int, ...], symmetrized: bool) -> Spectrum:
    if not tensor.homogeneous:
        raise NotHomogeneous("spectra are computed for homogeneous configurations")
    key = ("spec", colors)
    if key in tensor._cache:
        return tensor._cache[key]
    b = intersection_matrix(tensor, colors)
    cp = poly.charpoly(b.tolist())
    k = tensor.degree(colors)
    reduced = poly.divide_root(cp, k)
    ints = poly.integer_roots([int(c) for c in reduced], k)
    rest = [Fraction(c) for c in reduced]
    for x in ints:
        rest = poly.divide_root(rest, x)
    floats = poly.real_roots(rest) if len(rest) > 1 else []
    values = sorted(set(ints), reverse=True) + sorted(floats, reverse=True)
    values = tuple(sorted(values, key=lambda v: -float(v)))
    xi = max((abs(v) for v in values), default=0)
    spec = Spectrum(colors, k, values, xi, not floats, symmetrized,
                    tuple(cp), tuple(reduced))
    tensor._cache[key] = spec
    return spec


def constituent_spectrum(tensor: IntersectionTensor, i: int) -> Spectrum:
    """Spectrum of X_i; an oriented color is replaced by the undirected
    graph A_i + A_{i*} and flagged as symmetrized."""
    j = tensor.pairing[i]
    if j == i:
        return _spectrum(tensor, (i,), False)
    return _spectrum(tensor, tuple(sorted((i, j))), True)


def union_spectrum(tensor: IntersectionTensor, colors: Iterable[int]) -> Spectrum:
    cols = tuple(sorted(set(colors)))
    if not tensor.closed(cols):
        raise NotClosedUnderPairing(f"{cols} is not closed under the pairing")
    return _spectrum(tensor, cols, False)


def dense_eigenvalues(adj: np.ndarray) -> np.ndarray:
    """Reference eigenvalues of a symmetric 0/1 matrix (test oracle)."""
    return np.linalg.eigvalsh(adj.astype(float))


def spectral_motion_bound(n: int, k, xi, q) -> Fraction:
    """max(0, n (k - xi - q) / k) for a k-regular graph on n vertices."""
    k, xi, q = Fraction(k), Fraction(xi), Fraction(q)
    if k <= 0:
        raise ValueError("k must be positive")
    return max(Fraction(0), n * (k - xi - q) / k)


def certified_spectral_bound(tensor: IntersectionTensor, colors: Sequence[int]) -> tuple[Fraction, dict]:
    """Motion bound for the undirected graph X_I using a certified upper
    bound on xi.  Returns (bound, evidence)."""
    spec = union_spectrum(tensor, colors)
    k = spec.k
    q = tensor.q(spec.colors)
    xi_hi = spec.xi_upper()
    bound = spectral_motion_bound(tensor.n, k, xi_hi, q)
    return bound, {"k": k, "q": q, "xi_upper": xi_hi, "xi": spec.xi}


# ---------------------------------------------------------------------------
# rank 4

@dataclass(frozen=True)
class CubicCoefficients:
    a1: int
    a2: int
    a3: int
    color: int = 1

    @property
    def coeffs(self) -> list[int]:
        return [1, self.a1, self.a2, self.a3]

    def roots(self) -> list[float]:
        z = np.roots([float(c) for c in self.coeffs])
        return sorted(float(x.real) for x in z)


def _rank4_labels(tensor: IntersectionTensor, color: int, others):
    if tensor.r != 4 or not tensor.homogeneous:
        raise WrongRank(f"expected a homogeneous rank-4 configuration, got rank {tensor.r}")
    if not tensor.symmetric:
        raise WrongRank("the cubic is stated for symmetric schemes only")
    rest = [c for c in tensor.edge_colors if c != color]
    if others is not None:
        if sorted(others) != sorted(rest):
            raise WrongRank("others must list the two remaining edge colors")
        rest = list(others)
    return color, rest[0], rest[1]


def rank4_cubic(tensor: IntersectionTensor, color: int = 1, others=None) -> CubicCoefficients:
    """Cubic satisfied by the nontrivial eigenvalues of X_color.

    Colors are relabeled so that ``color`` plays the role of 1 and the two
    remaining edge colors (ascending, or ``others``) of 2 and 3.
    """
    a, b, c = _rank4_labels(tensor, color, others)
    p = lambda i, j, t: int(tensor.p[i, j, t])  # noqa: E731
    k1 = int(tensor.k[a])
    a1 = -(p(a, a, a) + p(a, b, b) - p(a, a, c) - p(a, b, c))
    a2 = ((p(a, b, b) - p(a, b, c)) * (p(a, a, a) - p(a, a, c))
          - (p(a, a, b) - p(a, a, c)) * (p(a, b, a) - p(a, b, c))
          - (k1 - p(a, a, c)))
    a3 = ((p(a, b, b) - p(a, b, c)) * (k1 - p(a, a, c))
          + (p(a, a, b) - p(a, a, c)) * p(a, b, c))
    return CubicCoefficients(a1, a2, a3, color)


def _cube_root(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def x1_radius_formula(p111, p122, p112, p121, k1, eps) -> float:
    """Closed-form bound on xi(X_1): the larger root of the 2 x 2 system
    plus 25 eps^(1/3) k_1."""
    disc = (p111 - p122) ** 2 + 4 * p112 * p121
    return (p111 + p122 + math.sqrt(disc)) / 2 + 25 * _cube_root(float(eps)) * k1


def x12_radius_formula(p111, p122, p222, p221, k1, k2, eps) -> float:
    disc = (p222 + p122 - p111) ** 2 + 4 * p122 * p221
    return (p111 + p122 + p222 + math.sqrt(disc)) / 2 + 25 * _cube_root(float(eps)) * (k1 + k2)


def xi_bound_x1(tensor: IntersectionTensor, eps) -> float:
    eps = Fraction(eps)
    _rank4_labels(tensor, 1, None)
    p = tensor.p
    k1 = int(tensor.k[1])
    if 1 / eps > k1:
        raise HypothesisViolated("1/eps <= k_1", f"1/eps={float(1 / eps)}, k_1={k1}")
    for i in (1, 2):
        if p[1, i, 3] > eps * k1:
            raise HypothesisViolated(f"p_(1,{i})^3 <= eps k_1", f"{int(p[1, i, 3])} > {float(eps * k1)}")
    bound = x1_radius_formula(int(p[1, 1, 1]), int(p[1, 2, 2]), int(p[1, 1, 2]), int(p[1, 2, 1]), k1, eps)
    spec = constituent_spectrum(tensor, 1)
    if not spec.xi_at_most(Fraction(bound)):
        raise SoundnessError(f"xi(X_1)={spec.xi} exceeds closed-form bound {bound}")
    return bound


def xi_bound_x12(tensor: IntersectionTensor, eps) -> float:
    eps = Fraction(eps)
    _rank4_labels(tensor, 1, None)
    p = tensor.p
    k1, k2 = int(tensor.k[1]), int(tensor.k[2])
    if 1 / eps > k1:
        raise HypothesisViolated("1/eps <= k_1", f"1/eps={float(1 / eps)}, k_1={k1}")
    if p[1, 1, 2] > eps * k1:
        raise HypothesisViolated("p_(1,1)^2 <= eps k_1")
    # read as all ordered pairs from {1, 2}; this also covers p_(1,1)^3, p_(2,2)^3
    for i, j in itertools.product((1, 2), repeat=2):
        if p[i, j, 3] > eps * min(int(tensor.k[i]), int(tensor.k[j])):
            raise HypothesisViolated(f"p_({i},{j})^3 <= eps min(k_{i}, k_{j})")
    bound = x12_radius_formula(int(p[1, 1, 1]), int(p[1, 2, 2]), int(p[2, 2, 2]), int(p[2, 2, 1]),
                               k1, k2, eps)
    spec = union_spectrum(tensor, (1, 2))
    if not spec.xi_at_most(Fraction(bound)):
        raise SoundnessError(f"xi(X_12)={spec.xi} exceeds closed-form bound {bound}")
    return bound


# ---------------------------------------------------------------------------
# root perturbation

@dataclass(frozen=True)
class PerturbationResult:
    eps: float
    M: float
    roots_f: tuple
    roots_g: tuple
    matching: tuple[int, ...]  # roots_f[i] is matched with roots_g[matching[i]]
    distance: float


def _perturbation_eps(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    n = len(a) - 1
    terms = [1.0]
    for i in range(1, n + 1):
        terms.append(abs(a[i]) ** (1.0 / i))
        terms.append(abs(b[i]) ** (1.0 / i))
    M = max(terms)
    s = sum(abs(b[i] - a[i]) * (2 * M) ** (n - i) for i in range(1, n + 1))
    return 2 * n * s ** (1.0 / n), M


def root_perturbation(f: Sequence, g: Sequence) -> PerturbationResult:
    """Bound on how far the roots of g can be from those of f, together with
    a matching of the roots that realizes it."""
    f, g = list(f), list(g)
    if len(f) != len(g):
        raise DegreeMismatch(f"degrees {len(f) - 1} and {len(g) - 1} differ")
    if len(f) < 2:
        raise DegreeMismatch("degree must be at least 1")
    if f[0] != 1 or g[0] != 1:
        raise NotMonic("both polynomials must be monic")
    a = [float(x) for x in f]
    b = [float(x) for x in g]
    eps, M = _perturbation_eps(a, b)
    rf = np.roots(a)
    rg = rf.copy() if a == b else np.roots(b)
    order = np.argsort(rf.real, kind="stable")
    rf = rf[order]
    if a == b:
        rg = rf.copy()
    n = len(rf)
    used = [False] * n
    match = []
    for z in rf:
        d = [abs(z - w) if not used[j] else np.inf for j, w in enumerate(rg)]
        j = int(np.argmin(d))
        used[j] = True
        match.append(j)
    dist = max(abs(rf[i] - rg[j]) for i, j in enumerate(match))
    if dist > eps and n <= 8:
        best = None
        for perm in itertools.permutations(range(n)):
            m = max(abs(rf[i] - rg[j]) for i, j in enumerate(perm))
            if best is None or m < best[0]:
                best = (m, perm)
        dist, match = best[0], list(best[1])
    return PerturbationResult(float(eps), float(M), tuple(rf), tuple(rg), tuple(match), float(dist))
