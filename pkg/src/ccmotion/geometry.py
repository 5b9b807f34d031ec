"""Clique geometries: the Metsch criterion, line extraction, root graphs,
claws and the smallest-eigenvalue -2 parameter recognizer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .core import Configuration
from .errors import (
    GeometryViolation,
    NonNegativeTheta,
    NotSmallestEigenvalueMinus2,
    SoundnessError,
    VertexNotInTwoLines,
)


@dataclass(frozen=True)
class MetschParams:
    lambda1: int
    lambda2: int
    mu: int
    k: int
    m: int


@dataclass(frozen=True)
class CliqueGeometry:
    lines: tuple[tuple[int, ...], ...]
    per_vertex_count: tuple[int, ...]
    m: int

    @property
    def per_vertex_max(self) -> int:
        return max(self.per_vertex_count) if self.per_vertex_count else 0

    def to_dict(self) -> dict:
        return {"m": self.m, "lines": [list(l) for l in self.lines],
                "per_vertex_max": self.per_vertex_max}


def common_neighbor_counts(adj: np.ndarray) -> np.ndarray:
    a = adj.astype(np.int64)
    return a @ a


def graph_mu(adj: np.ndarray) -> int:
    """Largest number of common neighbors of two distinct non-adjacent vertices."""
    cn = common_neighbor_counts(adj)
    mask = ~adj & ~np.eye(len(adj), dtype=bool)
    return int(cn[mask].max()) if mask.any() else 0


def metsch_params(adj: np.ndarray, m: int) -> MetschParams:
    adj = np.asarray(adj, dtype=bool)
    cn = common_neighbor_counts(adj)
    edge_vals = cn[adj]
    return MetschParams(int(edge_vals.min()), int(edge_vals.max()), graph_mu(adj),
                        int(adj.sum(axis=1).max()), m)


def metsch_check(params: MetschParams) -> bool:
    l1, l2, mu, k, m = params.lambda1, params.lambda2, params.mu, params.k, params.m
    cond3 = 2 * l1 - l2 > (2 * m - 1) * (mu - 1) - 1
    cond4 = Fraction(k) < (m + 1) * (l1 + 1) - Fraction(m * (m + 1) * (mu - 1), 2)
    return bool(cond3 and cond4)


def line_threshold(params: MetschParams) -> int:
    return params.lambda1 + 2 - (params.m - 1) * (params.mu - 1)


def verify_geometry(adj: np.ndarray, lines, m: int) -> tuple[int, ...]:
    """Check the three line-system properties; return per-vertex counts."""
    n = len(adj)
    cover = np.zeros((n, n), dtype=np.int64)
    count = np.zeros(n, dtype=np.int64)
    for line in lines:
        idx = np.asarray(line)
        sub = adj[np.ix_(idx, idx)]
        if not np.all(sub | np.eye(len(idx), dtype=bool)):
            raise GeometryViolation(f"line {list(line)} is not a clique")
        cover[np.ix_(idx, idx)] += 1
        count[idx] += 1
    if not np.array_equal(cover[adj], np.ones(int(adj.sum()), dtype=np.int64)):
        raise GeometryViolation("some edge is not covered by exactly one line")
    if count.max(initial=0) > m:
        raise GeometryViolation(f"a vertex lies on {int(count.max())} > {m} lines")
    # two lines sharing two vertices would cover that edge twice
    return tuple(int(c) for c in count)


def extract_lines(adj: np.ndarray, m: int, params: MetschParams | None = None) -> CliqueGeometry:
    """Maximal cliques of at least the Metsch size through every edge.

    Each edge not yet covered seeds a clique grown greedily inside the common
    neighborhood of its ends, best-connected candidates first.
    """
    adj = np.asarray(adj, dtype=bool)
    params = params or metsch_params(adj, m)
    threshold = line_threshold(params)
    n = len(adj)
    covered = np.zeros((n, n), dtype=bool)
    lines = set()
    for u, v in zip(*np.nonzero(np.triu(adj, 1))):
        if covered[u, v]:
            continue
        cand = np.flatnonzero(adj[u] & adj[v])
        inner = adj[np.ix_(cand, cand)].sum(axis=1)
        order = sorted(range(len(cand)), key=lambda t: (-inner[t], cand[t]))
        clique = [int(u), int(v)]
        for t in order:
            w = cand[t]
            if adj[w, clique].all():
                clique.append(int(w))
        if len(clique) >= threshold:
            line = tuple(sorted(clique))
            lines.add(line)
            idx = np.asarray(line)
            covered[np.ix_(idx, idx)] = True
    lines = tuple(sorted(lines))
    counts = verify_geometry(adj, lines, m)
    return CliqueGeometry(lines, counts, m)


def smallest_eigenvalue_floor(geometry: CliqueGeometry, spectrum) -> bool:
    """Exact check that the smallest eigenvalue is at least -m."""
    return spectrum.smallest_at_least(-geometry.m)


@dataclass(frozen=True)
class RootGraph:
    adj: np.ndarray
    edge_of_vertex: tuple[tuple[int, int], ...]  # vertex of X -> pair of lines


def reconstruct_root_graph(adj: np.ndarray, geometry: CliqueGeometry) -> RootGraph:
    """Graph on the lines, two lines adjacent when they meet; every vertex of
    the input becomes the edge joining its two lines."""
    adj = np.asarray(adj, dtype=bool)
    n = len(adj)
    on = [[] for _ in range(n)]
    for idx, line in enumerate(geometry.lines):
        for v in line:
            on[v].append(idx)
    if any(len(x) != 2 for x in on):
        bad = next(v for v in range(n) if len(on[v]) != 2)
        raise VertexNotInTwoLines(f"vertex {bad} lies on {len(on[bad])} lines")
    L = len(geometry.lines)
    y = np.zeros((L, L), dtype=bool)
    edge_of = tuple(tuple(x) for x in on)
    for a, b in edge_of:
        if y[a, b]:
            raise GeometryViolation(f"lines {a} and {b} meet twice")
        y[a, b] = y[b, a] = True
    ends = np.array(edge_of)
    share = ((ends[:, None, 0] == ends[None, :, 0]) | (ends[:, None, 0] == ends[None, :, 1])
             | (ends[:, None, 1] == ends[None, :, 0]) | (ends[:, None, 1] == ends[None, :, 1]))
    np.fill_diagonal(share, False)
    if not np.array_equal(share, adj):
        raise GeometryViolation("the line graph of the root graph differs from the input")
    return RootGraph(y, edge_of)


def star_lines(adj: np.ndarray):
    """Lines of a graph that is L(Y) for a triangle-free Y, or None.

    In such a graph two adjacent vertices have exactly k/2 - 1 common
    neighbors, all on the star they share, so each star is an edge together
    with its common neighborhood.
    """
    adj = np.asarray(adj, dtype=bool)
    deg = adj.sum(axis=1)
    if len(adj) == 0 or not np.all(deg == deg[0]) or deg[0] % 2:
        return None
    k = int(deg[0])
    cn = common_neighbor_counts(adj)
    if not np.all(cn[adj] == k // 2 - 1):
        return None
    lines = set()
    for u, v in zip(*np.nonzero(np.triu(adj, 1))):
        line = tuple(sorted([int(u), int(v)] + [int(w) for w in np.flatnonzero(adj[u] & adj[v])]))
        lines.add(line)
    lines = tuple(sorted(lines))
    try:
        counts = verify_geometry(adj, lines, 2)
    except GeometryViolation:
        return None
    if any(c != 2 for c in counts):
        return None
    return CliqueGeometry(lines, counts, 2)


def line_graph_root(adj: np.ndarray) -> RootGraph | None:
    """Root graph Y with X = L(Y), Y triangle-free and of minimum degree 2,
    or None when X is not of that form."""
    geo = star_lines(adj)
    if geo is None:
        return None
    try:
        root = reconstruct_root_graph(adj, geo)
    except (GeometryViolation, VertexNotInTwoLines):
        return None
    a = root.adj.astype(np.int64)
    if np.any((a @ a) * a):
        return None
    return root


def clique_mu_bound(geometry: CliqueGeometry, adj: np.ndarray | None = None) -> int:
    bound = geometry.m ** 2
    if adj is not None and len(adj) <= 512:
        mu = graph_mu(np.asarray(adj, dtype=bool))
        if mu > bound:
            raise SoundnessError(f"mu={mu} exceeds m^2={bound}")
    return bound


def delsarte_clique_size(k, theta_min) -> Fraction:
    theta = Fraction(theta_min)
    if theta >= 0:
        raise NonNegativeTheta("theta_min must be negative")
    return 1 - Fraction(k) / theta


class SrgVerdict(NamedTuple):
    kind: str  # "Triangular", "Lattice", "Sporadic" or "None"
    s: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.s})" if self.s is not None else self.kind


def srg_smallest_is_minus2(n: int, k: int, lam: int, mu: int) -> bool:
    """The restricted eigenvalues are the roots of x^2 - (lam - mu) x - (k - mu);
    -2 is a root and the other root is at least -2."""
    if 4 + 2 * (lam - mu) - (k - mu) != 0:
        return False
    return (lam - mu) + 2 >= -2


def _isqrt_exact(x: int) -> int | None:
    if x < 0:
        return None
    s = int(round(x**0.5))
    for c in (s - 1, s, s + 1):
        if c >= 0 and c * c == x:
            return c
    return None


def recognize_srg_minus2(n: int, k: int, lam: int, mu: int) -> SrgVerdict:
    if not srg_smallest_is_minus2(n, k, lam, mu):
        raise NotSmallestEigenvalueMinus2(f"({n},{k},{lam},{mu}) does not have smallest eigenvalue -2")
    d = _isqrt_exact(1 + 8 * n)
    if d is not None and (1 + d) % 2 == 0:
        s = (1 + d) // 2
        if s >= 2 and (n, k, lam, mu) == (s * (s - 1) // 2, 2 * (s - 2), s - 2, 4):
            return SrgVerdict("Triangular", s)
    s = _isqrt_exact(n)
    if s is not None and (n, k, lam, mu) == (s * s, 2 * (s - 1), s - 2, 2):
        return SrgVerdict("Lattice", s)
    if n <= 28:
        return SrgVerdict("Sporadic")
    return SrgVerdict("None")


def claw_search(cfg: Configuration, I: Iterable[int], J: Iterable[int], t: int):
    """Find x, y_1..y_t with c(x, y_a) in I and c(y_a, y_b) in J for a != b.

    Returns ``(x, (y_1, ..., y_t))`` or None.  The search is exhaustive.
    """
    inI = np.isin(cfg.color, list(I))
    inJ = np.isin(cfg.color, list(J))
    both = inJ & inJ.T
    for x in range(cfg.n):
        ys = np.flatnonzero(inI[x])
        ys = ys[ys != x]
        if len(ys) < t:
            continue
        sub = both[np.ix_(ys, ys)]
        found = _find_clique(sub, t)
        if found is not None:
            return x, tuple(int(ys[i]) for i in found)
    return None


def _find_clique(adj: np.ndarray, t: int):
    n = len(adj)

    def extend(chosen, cand):
        if len(chosen) == t:
            return chosen
        for pos, v in enumerate(cand):
            if len(chosen) + len(cand) - pos < t:
                return None
            nxt = [w for w in cand[pos + 1:] if adj[v, w]]
            res = extend(chosen + [v], nxt)
            if res is not None:
                return res
        return None

    if t == 0:
        return []
    return extend([], list(range(n)))
