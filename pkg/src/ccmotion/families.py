"""Generators for the named families and their closed-form parameters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import shortest_path

from . import caps
from .core import Configuration, IntersectionTensor, _make, from_adjacency, intersection_tensor
from .errors import BadParams, HasTriangle, NotCoherent, NotDistanceRegular, NotRegular, TooLarge
from .wl import refine


def _check_size(n: int) -> None:
    if n > caps.cap("generate"):
        raise TooLarge(f"n={n} exceeds generation cap {caps.cap('generate')}")


def gen_johnson(m: int, d: int) -> Configuration:
    """Johnson scheme J(m, d): d-subsets, color = |U1 \\ U2|."""
    if d < 2 or m < 2 * d:
        raise BadParams(f"Johnson scheme needs d >= 2 and m >= 2d, got m={m}, d={d}")
    _check_size(math.comb(m, d))
    masks = np.array([sum(1 << x for x in s) for s in itertools.combinations(range(m), d)],
                     dtype=np.int64)
    inter = masks[:, None] & masks[None, :]
    common = np.vectorize(lambda x: bin(x).count("1"), otypes=[np.int64])(inter)
    return _make(d - common, d + 1)


def gen_hamming(d: int, m: int) -> Configuration:
    """Hamming scheme H(d, m): words of length d over m symbols."""
    if d < 1 or m < 2:
        raise BadParams(f"Hamming scheme needs d >= 1 and m >= 2, got d={d}, m={m}")
    _check_size(m**d)
    words = np.array(list(itertools.product(range(m), repeat=d)), dtype=np.int64)
    dist = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    return _make(dist, d + 1)


def gen_triangular(s: int) -> Configuration:
    if s < 4:
        raise BadParams("triangular graph needs s >= 4")
    return gen_johnson(s, 2)


def gen_lattice(s: int) -> Configuration:
    if s < 2:
        raise BadParams("lattice graph needs s >= 2")
    return gen_hamming(2, s)


def crown_graph(s: int) -> np.ndarray:
    """K_{s,s} with a perfect matching removed."""
    adj = np.zeros((2 * s, 2 * s), dtype=bool)
    adj[:s, s:] = True
    adj[s:, :s] = True
    idx = np.arange(s)
    adj[idx, idx + s] = False
    adj[idx + s, idx] = False
    return adj


def gen_crown(s: int) -> Configuration:
    """Distance scheme of the crown graph (rank 4, imprimitive)."""
    if s < 3:
        raise BadParams("crown graph is disconnected for s < 3")
    return drg_to_scheme(crown_graph(s))


def cycle_graph(n: int) -> np.ndarray:
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    adj[idx, (idx + 1) % n] = True
    adj[(idx + 1) % n, idx] = True
    return adj


def gen_cycle(n: int) -> Configuration:
    """Distance scheme of the n-cycle."""
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    return drg_to_scheme(cycle_graph(n))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _primitive_root(p: int) -> int:
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def gen_cyclotomic(p: int, e: int) -> Configuration:
    """Cyclotomic scheme on Z_p: x, y get color 1 + (index of y - x in
    F_p^* modulo the subgroup of index e)."""
    if not _is_prime(p) or e < 1 or (p - 1) % e:
        raise BadParams("need a prime p and e dividing p - 1")
    _check_size(p)
    g = _primitive_root(p)
    log = np.zeros(p, dtype=np.int64)
    x = 1
    for t in range(p - 1):
        log[x] = t
        x = x * g % p
    idx = np.arange(p)
    diff = (idx[None, :] - idx[:, None]) % p
    color = 1 + log[diff] % e
    color[diff == 0] = 0
    return _make(color, e + 1)


def gen_paley(q: int) -> Configuration:
    """Paley scheme for a prime q = 1 mod 4 (rank 3)."""
    if q % 4 != 1:
        raise BadParams("Paley scheme needs q = 1 mod 4")
    return gen_cyclotomic(q, 2)


def gen_affine_fusion(q: int, parts: Sequence[int]) -> Configuration:
    """Translation scheme on F_q^2 whose classes are unions of parallel
    classes of lines: the q + 1 directions are split into consecutive groups
    of the given sizes.  Every class is a Latin-square type graph."""
    if not _is_prime(q) or sum(parts) != q + 1 or min(parts) < 1:
        raise BadParams("need a prime q and part sizes summing to q + 1")
    _check_size(q * q)
    directions = [(1, t) for t in range(q)] + [(0, 1)]
    slope_class = {}
    start = 0
    for c, size in enumerate(parts, start=1):
        for dx, dy in directions[start:start + size]:
            slope_class[(dx, dy)] = c
        start += size
    pts = [(a, b) for a in range(q) for b in range(q)]
    n = len(pts)
    color = np.zeros((n, n), dtype=np.int64)
    inv = {x: pow(x, q - 2, q) for x in range(1, q)}
    for u, (a1, b1) in enumerate(pts):
        for v, (a2, b2) in enumerate(pts):
            dx, dy = (a2 - a1) % q, (b2 - b1) % q
            if dx == dy == 0:
                continue
            if dx == 0:
                color[u, v] = slope_class[(0, 1)]
            else:
                color[u, v] = slope_class[(1, dy * inv[dx] % q)]
    return _make(color, len(parts) + 1)


# ---------------------------------------------------------------------------
# graph-derived schemes

def petersen_graph() -> np.ndarray:
    """Kneser graph on 2-subsets of a 5-set."""
    return np.asarray(gen_johnson(5, 2).color == 2)


def heawood_graph() -> np.ndarray:
    """Point-line incidence graph of the Fano plane."""
    adj = np.zeros((14, 14), dtype=bool)
    for line in range(7):
        for off in (0, 1, 3):
            pt = (line + off) % 7
            adj[pt, 7 + line] = adj[7 + line, pt] = True
    return adj


def complete_bipartite(a: int, b: int) -> np.ndarray:
    adj = np.zeros((a + b, a + b), dtype=bool)
    adj[:a, a:] = True
    adj[a:, :a] = True
    return adj


def is_bipartite(adj: np.ndarray) -> bool:
    adj = np.asarray(adj, dtype=bool)
    n = len(adj)
    side = np.full(n, -1)
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(adj[u]):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def is_regular(adj: np.ndarray) -> bool:
    deg = adj.sum(axis=1)
    return bool(np.all(deg == deg[0]))


def has_triangle(adj: np.ndarray) -> bool:
    a = adj.astype(np.int64)
    return bool(np.any((a @ a) * a))


def line_graph(adj: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Line graph adjacency and the sorted edge list it is indexed by."""
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(adj, 1)))]
    ends = np.array(edges, dtype=np.int64).reshape(-1, 2)
    share = ((ends[:, None, 0] == ends[None, :, 0]) | (ends[:, None, 0] == ends[None, :, 1])
             | (ends[:, None, 1] == ends[None, :, 0]) | (ends[:, None, 1] == ends[None, :, 1]))
    np.fill_diagonal(share, False)
    return share, edges


@dataclass(frozen=True)
class LineGraphScheme:
    config: Configuration
    line_graph: np.ndarray
    edges: list
    single_constituent: bool


def line_graph_scheme(base: np.ndarray) -> LineGraphScheme:
    """Coherent closure of the adjacency coloring of L(base)."""
    base = np.asarray(base, dtype=bool)
    if not is_regular(base):
        raise NotRegular("base graph is not regular")
    if has_triangle(base):
        raise HasTriangle("base graph contains a triangle")
    lg, edges = line_graph(base)
    cfg = refine(from_adjacency(lg))
    single = bool(len(np.unique(cfg.color[lg])) == 1)
    return LineGraphScheme(cfg, lg, edges, single)


def distance_matrix(adj: np.ndarray) -> np.ndarray:
    d = shortest_path(np.asarray(adj, dtype=float), unweighted=True, directed=False)
    return d


def drg_to_scheme(adj: np.ndarray) -> Configuration:
    """Distance coloring of a distance-regular graph."""
    d = distance_matrix(adj)
    if np.isinf(d).any():
        raise NotDistanceRegular("graph is disconnected")
    dist = d.astype(np.int64)
    cfg = _make(dist, int(dist.max()) + 1)
    try:
        intersection_tensor(cfg)
    except NotCoherent as exc:
        raise NotDistanceRegular(f"distance coloring is not coherent: {exc}", exc.witness) from exc
    return cfg


def intersection_array(tensor: IntersectionTensor) -> tuple[list[int], list[int]]:
    """(b_0..b_{D-1}; c_1..c_D) of a distance scheme (color = distance)."""
    D = tensor.r - 1
    b = [int(tensor.p[1, h + 1, h]) for h in range(D)]
    c = [int(tensor.p[1, h - 1, h]) for h in range(1, D + 1)]
    return b, c


def johnson_array(m: int, d: int) -> tuple[list[int], list[int]]:
    return ([(d - i) * (m - d - i) for i in range(d)], [(i + 1) ** 2 for i in range(d)])


def hamming_array(d: int, m: int) -> tuple[list[int], list[int]]:
    return ([(d - i) * (m - 1) for i in range(d)], [i + 1 for i in range(d)])


def johnson_eigenvalues(m: int, d: int) -> list[int]:
    return [(d - j) * (m - d - j) - j for j in range(d + 1)]


def hamming_eigenvalues(d: int, m: int) -> list[int]:
    return [d * (m - 1) - j * m for j in range(d + 1)]


# ---------------------------------------------------------------------------
# motion formulas

def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def cameron_min_degree(m: int, k: int, d: int, two_cycle: bool) -> int:
    """Support of a transposition (or 3-cycle) acting on the Cameron scheme
    built from k-subsets of an m-set in product dimension d."""
    if k < 1 or d < 1 or 2 * k > m:
        raise BadParams(f"need 1 <= k <= m/2 and d >= 1, got m={m}, k={k}, d={d}")
    c = 2 if two_cycle else 3
    moved = math.comb(m, k) - _binom(m - c, k) - _binom(m - c, k - c)
    return moved * math.comb(m, k) ** (d - 1)


def hamming_motion_upper(d: int, m: int) -> int:
    return 2 * m ** (d - 1)


def hamming_tm_example(m: int, delta: float) -> dict:
    """Degree and motion data for H(d, m) with d = -floor(m ln delta)."""
    d = -math.floor(m * math.log(delta))
    n = m**d
    degrees = [math.comb(d, j) * (m - 1) ** j for j in range(1, d + 1)]
    return {"d": d, "n": n, "k_max": max(degrees), "motion": 2 * n // m,
            "rank": d + 1, "motion_fraction": 2 / m}
