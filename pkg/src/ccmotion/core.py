"""Configuration data model, axiom validation and intersection numbers.

A configuration is stored as a dense n x n array of color ids in
``range(r)`` together with the pairing ``i -> i*`` (the color of the
reversed pairs).  Arrays are made read-only on construction so instances can
be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import caps
from .errors import (
    NotCoherent,
    NotHomogeneous,
    NotSquare,
    PairingUndefined,
    RankOverflow,
    TooLarge,
    UnusedColorId,
    ValidationError,
    VertexEdgeColorClash,
)

INF = None  # marker used in distance tables for unreachable colors

# Dense p-tensors above this rank would not fit comfortably in memory.
MAX_TENSOR_RANK = 160


def _compact_dtype(r: int):
    if r <= 256:
        return np.uint8
    if r <= 65536:
        return np.uint16
    return np.int32


@dataclass(frozen=True, eq=False)
class Configuration:
    color: np.ndarray
    pairing: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.color.shape[0]

    @property
    def r(self) -> int:
        return len(self.pairing)

    @cached_property
    def diagonal_colors(self) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unique(np.diagonal(self.color)))

    @cached_property
    def edge_colors(self) -> tuple[int, ...]:
        diag = set(self.diagonal_colors)
        return tuple(c for c in range(self.r) if c not in diag)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.diagonal_colors) == 1

    @property
    def is_symmetric(self) -> bool:
        return all(i == j for i, j in enumerate(self.pairing))

    def adjacency(self, colors: int | Iterable[int]) -> np.ndarray:
        """Boolean adjacency matrix of the union of the given constituents."""
        if isinstance(colors, (int, np.integer)):
            return self.color == colors
        return np.isin(self.color, list(colors))

    def vertex_colors(self) -> np.ndarray:
        return np.diagonal(self.color).copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.pairing == other.pairing and np.array_equal(self.color, other.color)

    def __hash__(self) -> int:
        return hash((self.color.tobytes(), self.pairing))

    def __repr__(self) -> str:
        return f"Configuration(n={self.n}, r={self.r})"


def _derive_pairing(color: np.ndarray, r: int) -> tuple[int, ...]:
    """Pairing i -> i*; raises PairingUndefined if some color class is not
    mapped onto a single color by transposition."""
    n = color.shape[0]
    flat = color.astype(np.int64).ravel()
    rev = color.T.astype(np.int64).ravel()
    pairs = np.unique(flat * r + rev)
    src = pairs // r
    if len(pairs) != r:
        counts = np.bincount(src, minlength=r)
        bad = int(np.flatnonzero(counts > 1)[0])
        images = sorted(int(x) for x in pairs[src == bad] % r)
        raise PairingUndefined(f"reversed pairs of color {bad} carry colors {images}")
    pairing = tuple(int(x) for x in pairs % r)
    del n
    return pairing


def _make(color: np.ndarray, r: int | None = None) -> Configuration:
    """Wrap an already-dense color array; checks only the pairing."""
    if r is None:
        r = int(color.max()) + 1
    color = np.ascontiguousarray(color, dtype=_compact_dtype(r))
    color.setflags(write=False)
    return Configuration(color, _derive_pairing(color, r))


def validate_configuration(matrix) -> Configuration:
    """Check the configuration axioms and return a Configuration."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NotSquare(f"expected a nonempty square matrix, got shape {a.shape}")
    if a.dtype.kind not in "iu":
        if a.dtype.kind == "f" and np.all(np.mod(a, 1) == 0):
            a = a.astype(np.int64)
        else:
            raise ValidationError("color ids must be integers")
    if a.size and a.min() < 0:
        raise ValidationError("color ids must be nonnegative")
    n = a.shape[0]
    if n > caps.cap("tensor"):
        raise TooLarge(f"n={n} exceeds cap {caps.cap('tensor')}")
    r = int(a.max()) + 1
    present = np.zeros(r, dtype=bool)
    present[np.unique(a)] = True
    if not present.all():
        missing = int(np.flatnonzero(~present)[0])
        raise UnusedColorId(f"color id {missing} does not occur (r={r})")
    diag = np.unique(np.diagonal(a))
    off = a[~np.eye(n, dtype=bool)]
    clash = np.intersect1d(diag, np.unique(off))
    if clash.size:
        raise VertexEdgeColorClash(f"color {int(clash[0])} used on loops and on edges")
    return _make(a.astype(np.int64), r)


def from_adjacency(adj) -> Configuration:
    """Color 0 on loops, 1 on edges, 2 on non-edges (ids compacted if unused)."""
    adj = np.asarray(adj, dtype=bool)
    if not np.array_equal(adj, adj.T):
        raise ValidationError("adjacency matrix must be symmetric")
    if np.any(np.diagonal(adj)):
        raise ValidationError("adjacency matrix has loops")
    c = np.where(adj, 1, 2)
    np.fill_diagonal(c, 0)
    return validate_configuration(densify(c))


def densify(color: np.ndarray) -> np.ndarray:
    """Order-preserving relabeling of the used ids onto 0..r-1."""
    values, inverse = np.unique(color, return_inverse=True)
    return inverse.reshape(color.shape)


def permute_vertices(cfg: Configuration, perm: Sequence[int]) -> Configuration:
    """Image of cfg under the vertex map u -> perm[u]."""
    g = np.asarray(perm)
    out = np.empty_like(cfg.color)
    out[np.ix_(g, g)] = cfg.color
    out.setflags(write=False)
    return Configuration(out, cfg.pairing)


def recolor(cfg: Configuration, mapping: Sequence[int]) -> Configuration:
    """Apply a bijection on color ids."""
    mapping = np.asarray(mapping)
    return _make(mapping[cfg.color.astype(np.int64)], cfg.r)


# ---------------------------------------------------------------------------
# pair signatures (shared with the refinement module)

def pair_signature_classes(color: np.ndarray, r: int) -> tuple[np.ndarray, int]:
    """Canonical class ids of the one-round refinement signatures.

    The signature of (x, y) is its old color followed by the sorted multiset
    of codes ``c(x,z) * r + c(z,y)`` over all z.  Signatures are compared
    lexicographically (big-endian byte encoding makes ``memcmp`` order match
    numeric order), so class ids do not depend on the vertex numbering.
    """
    n = color.shape[0]
    old = color.astype(np.int64)
    top = r * r
    dt = np.dtype(">u4") if top < 2**32 else np.dtype(">u8")
    width = (n + 1) * dt.itemsize
    chunk = max(1, min(n, (1 << 24) // max(1, n * n)))
    parts = []
    for x0 in range(0, n, chunk):
        xs = slice(x0, min(n, x0 + chunk))
        codes = old[xs, :, None] * r + old[None, :, :]  # (x, z, y)
        codes.sort(axis=1)
        block = np.empty((codes.shape[0], n, n + 1), dtype=dt)
        block[:, :, 0] = old[xs]
        block[:, :, 1:] = codes.transpose(0, 2, 1)
        parts.append(np.ascontiguousarray(block).reshape(-1).view(np.dtype((np.void, width))))
    keys = np.concatenate(parts)
    uniq, inverse = np.unique(keys, return_inverse=True)
    return inverse.reshape(n, n), len(uniq)


def _triple_counts(color: np.ndarray, r: int, u: int, v: int) -> np.ndarray:
    """counts[i, j] = |{w : c(u,w)=i, c(w,v)=j}|."""
    out = np.zeros((r, r), dtype=np.int64)
    np.add.at(out, (color[u, :].astype(np.int64), color[:, v].astype(np.int64)), 1)
    return out


def check_coherence(cfg: Configuration) -> None:
    """Raise NotCoherent with a witness unless cfg is coherent."""
    cls, count = pair_signature_classes(cfg.color, cfg.r)
    if count == cfg.r:
        return
    col = cfg.color.astype(np.int64)
    flat_c = col.ravel()
    flat_s = cls.ravel()
    for t in range(cfg.r):
        where = np.flatnonzero(flat_c == t)
        sig = flat_s[where]
        if np.all(sig == sig[0]):
            continue
        a = int(where[0])
        b = int(where[np.flatnonzero(sig != sig[0])[0]])
        n = cfg.n
        (u1, v1), (u2, v2) = divmod(a, n), divmod(b, n)
        c1 = _triple_counts(cfg.color, cfg.r, u1, v1)
        c2 = _triple_counts(cfg.color, cfg.r, u2, v2)
        i, j = (int(x) for x in np.argwhere(c1 != c2)[0])
        raise NotCoherent((i, j, t, (u1, v1), (u2, v2)), (int(c1[i, j]), int(c2[i, j])))
    raise AssertionError("signature classes disagree with colors")  # pragma: no cover


def is_coherent(cfg: Configuration) -> bool:
    try:
        check_coherence(cfg)
    except NotCoherent:
        return False
    return True


# ---------------------------------------------------------------------------
# intersection numbers

@dataclass(frozen=True, eq=False)
class IntersectionTensor:
    """Intersection numbers ``p[i, j, t]`` of a coherent configuration.

    ``k[i]`` is the out-degree of constituent i (on the vertices where it is
    nonempty) and ``size[i]`` the number of pairs of color i.
    """

    n: int
    p: np.ndarray
    k: np.ndarray
    size: np.ndarray
    pairing: tuple[int, ...]
    diagonal: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def r(self) -> int:
        return len(self.pairing)

    @property
    def edge_colors(self) -> tuple[int, ...]:
        d = set(self.diagonal)
        return tuple(c for c in range(self.r) if c not in d)

    @property
    def homogeneous(self) -> bool:
        return len(self.diagonal) == 1

    @property
    def symmetric(self) -> bool:
        return all(i == j for i, j in enumerate(self.pairing))

    def pp(self, i: int, j: int, t: int) -> int:
        return int(self.p[i, j, t])

    def degree(self, colors: Iterable[int]) -> int:
        return int(sum(int(self.k[i]) for i in colors))

    def closed(self, colors: Iterable[int]) -> bool:
        s = set(colors)
        return all(self.pairing[i] in s for i in s)

    def common_neighbors(self, colors: Sequence[int], t: int) -> int:
        """Number of w with c(u,w) in I and c(w,v) in I for a pair of color t."""
        idx = np.asarray(list(colors))
        return int(self.p[np.ix_(idx, idx)][:, :, t].sum())

    def q(self, colors: Sequence[int]) -> int:
        """Largest number of common neighbors of two distinct vertices in X_I."""
        return max(self.common_neighbors(colors, t) for t in self.edge_colors)

    def srg_parameters(self, colors: Sequence[int]):
        """(n, k, lambda, mu) if X_I is strongly regular, else None."""
        if not self.homogeneous:
            return None
        cols = sorted(set(colors))
        inside = [t for t in self.edge_colors if t in cols]
        outside = [t for t in self.edge_colors if t not in cols]
        if not inside or not outside:
            return None
        lam = {self.common_neighbors(cols, t) for t in inside}
        mu = {self.common_neighbors(cols, t) for t in outside}
        if len(lam) != 1 or len(mu) != 1:
            return None
        return (self.n, self.degree(cols), lam.pop(), mu.pop())

    def lambda_x12(self, i: int) -> int:
        """Common neighbors in X_{1,2} of a pair of color i (ordered scheme)."""
        p = self.p
        return int(p[1, 1, i] + 2 * p[1, 2, i] + p[2, 2, i])

    def mu_x12(self) -> int:
        return self.lambda_x12(3)

    def distances(self, colors: int | Iterable[int]) -> dict[int, int]:
        """Color distances in X_I: ``dist[t]`` for every edge color t reachable.

        All pairs of one color share the same distance in a coherent
        configuration, so the search runs on colors: a pair of color t is at
        distance l+1 when p[a, b, t] > 0 for some color a at distance l and
        b in I.
        """
        if isinstance(colors, (int, np.integer)):
            colors = (int(colors),)
        key = ("dist", tuple(sorted(set(colors))))
        if key in self._cache:
            return self._cache[key]
        cols = list(key[1])
        if not self.homogeneous:
            raise NotHomogeneous("color distances need a homogeneous configuration")
        step = self.p[:, cols, :].sum(axis=1) > 0  # step[a, t]
        dist = {self.diagonal[0]: 0}
        frontier = [self.diagonal[0]]
        level = 0
        while frontier:
            level += 1
            reach = np.flatnonzero(step[frontier].any(axis=0))
            frontier = [int(t) for t in reach if int(t) not in dist]
            for t in frontier:
                dist[t] = level
        del dist[self.diagonal[0]]
        self._cache[key] = dist
        return dist

    def connected(self, colors: int | Iterable[int]) -> bool:
        return len(self.distances(colors)) == len(self.edge_colors)

    def diameter(self, colors: int | Iterable[int]) -> int | None:
        d = self.distances(colors)
        if len(d) != len(self.edge_colors):
            return None
        return max(d.values()) if d else 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "pairing": list(self.pairing),
            "diagonal": list(self.diagonal),
            "k": [int(x) for x in self.k],
            "p": self.p.tolist(),
        }


def intersection_tensor(cfg: Configuration) -> IntersectionTensor:
    """Intersection numbers of cfg; raises NotCoherent with a witness."""
    if cfg.r > MAX_TENSOR_RANK:
        raise RankOverflow(f"rank {cfg.r} exceeds dense tensor cap {MAX_TENSOR_RANK}")
    check_coherence(cfg)
    r, n = cfg.r, cfg.n
    col = cfg.color.astype(np.int64)
    flat = col.ravel()
    first = np.full(r, -1, dtype=np.int64)
    order = np.arange(flat.size)[::-1]
    first[flat[order]] = order  # earliest occurrence wins
    p = np.zeros((r, r, r), dtype=np.int64)
    for t in range(r):
        u, v = divmod(int(first[t]), n)
        p[:, :, t] = _triple_counts(cfg.color, r, u, v)
    size = np.bincount(flat, minlength=r)
    rows = np.array([len(np.unique(np.nonzero(col == i)[0])) for i in range(r)])
    k = size // rows
    p.setflags(write=False)
    k.setflags(write=False)
    return IntersectionTensor(n, p, k, size, cfg.pairing, cfg.diagonal_colors)


def check_identities(cfg: Configuration, tensor: IntersectionTensor) -> list[str]:
    """Return the list of failed identities (empty when all hold).

    Checks the partition of all pairs, the degree sums over j, and the
    double-counting identity relating p[i,j,s] and p[s,j*,i].
    """
    failed = []
    if int(tensor.size.sum()) != cfg.n * cfg.n:
        failed.append("colors do not partition all pairs")
    if tensor.homogeneous:
        for i in tensor.edge_colors:
            for t in tensor.edge_colors:
                if int(tensor.p[i, :, t].sum()) != int(tensor.k[i]):
                    failed.append(f"row sum p[{i},:,{t}] != k_{i}")
    # |R_s| p_{i,j}^s = |R_i| p_{s,j*}^i counts triangles (u,v,w) two ways.
    star = np.asarray(tensor.pairing)
    lhs = tensor.p * tensor.size[None, None, :]
    rhs = np.transpose(tensor.p[:, star, :], (2, 1, 0)) * tensor.size[:, None, None]
    if not np.array_equal(lhs, rhs):
        i, j, s = (int(x) for x in np.argwhere(lhs != rhs)[0])
        failed.append(f"double counting fails at (i={i}, j={j}, s={s})")
    return failed


# ---------------------------------------------------------------------------
# flags and statistics

@dataclass(frozen=True)
class StructuralFlags:
    homogeneous: bool
    association_scheme: bool
    primitive: bool
    scheme_diameter: int | None


def structural_flags(cfg: Configuration, tensor: IntersectionTensor) -> StructuralFlags:
    homog = tensor.homogeneous
    assoc = tensor.symmetric
    primitive = homog and all(tensor.connected(i) for i in tensor.edge_colors)
    diam = None
    if homog and primitive and tensor.edge_colors:
        diam = max(tensor.diameter(i) for i in tensor.edge_colors)
    elif homog and not tensor.edge_colors:
        diam = 0
    return StructuralFlags(homog, assoc, primitive, diam)


@dataclass(frozen=True)
class ConstituentStat:
    color: int
    k: int
    lam: int
    q: int
    diameter: int | None
    connected: bool


def constituent_stats(tensor: IntersectionTensor) -> list[ConstituentStat]:
    if not tensor.homogeneous:
        raise NotHomogeneous("constituent statistics need a homogeneous configuration")
    out = []
    for i in tensor.edge_colors:
        q = max(int(tensor.p[i, i, j]) for j in tensor.edge_colors)
        d = tensor.diameter(i)
        out.append(ConstituentStat(i, int(tensor.k[i]), int(tensor.p[i, i, i]), q, d, d is not None))
    return out


def order_by_degree(cfg: Configuration) -> Configuration:
    """Recolor so the diagonal is 0 and edge degrees are nondecreasing.

    Ties are broken by ``(min(i, i*), i)`` so that a pair of oriented colors
    of equal degree ends up adjacent.
    """
    if not cfg.is_homogeneous:
        raise NotHomogeneous("order_by_degree needs a homogeneous configuration")
    n = cfg.n
    counts = np.bincount(cfg.color.ravel().astype(np.int64), minlength=cfg.r)
    deg = counts // n
    edges = sorted(cfg.edge_colors, key=lambda i: (int(deg[i]), min(i, cfg.pairing[i]), i))
    mapping = np.empty(cfg.r, dtype=np.int64)
    mapping[cfg.diagonal_colors[0]] = 0
    for new, old in enumerate(edges, start=1):
        mapping[old] = new
    return recolor(cfg, mapping)


def degree_fraction(tensor: IntersectionTensor, i: int) -> Fraction:
    return Fraction(int(tensor.k[i]), tensor.n)
