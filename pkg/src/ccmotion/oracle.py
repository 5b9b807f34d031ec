"""Exact automorphism groups and motion for small configurations.

The search follows the usual individualization-refinement scheme.  A first
path individualizes, at each level, the smallest vertex of the largest
non-singleton vertex color class until the refined coloring is discrete;
this fixes a base b_1, ..., b_L.  For every level, from the deepest up, each
vertex of the target cell is tested for being the image of b_i under an
automorphism fixing b_1..b_{i-1}; successful tests contribute generators, and
the product of the orbit lengths is the group order.

Refinement is canonical (class ids are ordered by signature), so two nodes
related by an automorphism carry identical color histograms and the leaf
colorings define the automorphism directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import caps
from .core import Configuration, _make, check_coherence
from .errors import NotTransitive, TooLarge
from .wl import individualize, refine


@dataclass(frozen=True)
class GroupInfo:
    generators: list[np.ndarray]
    order: int
    motion: int
    orbit_count: int
    exact: bool = True
    base: tuple[int, ...] = ()
    nodes: int = 0

    def to_dict(self) -> dict:
        return {"order": self.order, "motion": self.motion, "exact": self.exact,
                "orbit_count": self.orbit_count,
                "generators": [g.tolist() for g in self.generators]}


@dataclass
class _Node:
    cfg: Configuration
    diag: np.ndarray
    key: tuple


class _Tree:
    def __init__(self, cfg: Configuration):
        self.cfg = cfg
        self.color = cfg.color
        self.n = cfg.n
        self.cache: dict[tuple, _Node] = {}
        self.refinements = 0

    def node(self, seq: tuple) -> _Node:
        hit = self.cache.get(seq)
        if hit is not None:
            return hit
        if not seq:
            c = refine(self.cfg)
        else:
            parent = self.node(seq[:-1])
            c = refine(individualize(parent.cfg, [seq[-1]]))
        self.refinements += 1
        diag = np.diagonal(c.color).astype(np.int64)
        key = (c.r, np.bincount(c.color.ravel().astype(np.int64), minlength=c.r).tobytes())
        nd = _Node(c, diag, key)
        self.cache[seq] = nd
        return nd

    def is_automorphism(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(self.color[np.ix_(g, g)], self.color))

    def leaf_map(self, first: _Node, other: _Node) -> np.ndarray | None:
        sc = np.argsort(first.diag, kind="stable")
        so = np.argsort(other.diag, kind="stable")
        if not np.array_equal(first.diag[sc], other.diag[so]):
            return None
        g = np.empty(self.n, dtype=np.int64)
        g[sc] = so
        return g


def _orbit(point: int, gens: Sequence[np.ndarray]) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _orbit_partition(n: int, gens: Sequence[np.ndarray]) -> np.ndarray:
    if not gens:
        return np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(gens))
    cols = np.concatenate([np.asarray(g) for g in gens])
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return connected_components(graph, directed=True, connection="weak")[1]


class _Search:
    def __init__(self, cfg: Configuration):
        self.tree = _Tree(cfg)
        self.n = cfg.n
        self.base: list[int] = []
        self.path: list[tuple] = [()]
        while True:
            nd = self.tree.node(self.path[-1])
            vals, counts = np.unique(nd.diag, return_counts=True)
            if counts.max() == 1:
                break
            big = counts.max()
            target = vals[np.flatnonzero(counts == big)[0]]
            b = int(np.flatnonzero(nd.diag == target)[0])
            self.base.append(b)
            self.path.append(self.path[-1] + (b,))
        self.L = len(self.base)
        self.gens_at: list[list[np.ndarray]] = [[] for _ in range(self.L + 1)]

    def stabilizer_gens(self, level: int) -> list[np.ndarray]:
        """Generators fixing b_1..b_level pointwise."""
        return [g for lst in self.gens_at[level:] for g in lst]

    def find(self, seq: tuple, depth: int) -> np.ndarray | None:
        """An automorphism mapping the base prefix of length depth onto seq."""
        tree = self.tree
        d = tree.node(seq)
        c = tree.node(self.path[depth])
        if d.key != c.key:
            return None
        if depth == self.L:
            g = tree.leaf_map(c, d)
            if g is not None and tree.is_automorphism(g):
                return g
            return None
        target = c.diag[self.base[depth]]
        for y in np.flatnonzero(d.diag == target):
            g = self.find(seq + (int(y),), depth + 1)
            if g is not None:
                return g
        return None

    def run(self) -> list[int]:
        sizes = [1] * self.L
        for i in reversed(range(self.L)):
            prefix = self.path[i]
            c = self.tree.node(prefix)
            b = self.base[i]
            cell = np.flatnonzero(c.diag == c.diag[b])
            orbit = _orbit(b, self.stabilizer_gens(i))
            for x in cell:
                x = int(x)
                if x in orbit:
                    continue
                g = self.find(prefix + (x,), i + 1)
                if g is not None:
                    self.gens_at[i].append(g)
                    orbit = _orbit(b, self.stabilizer_gens(i))
            sizes[i] = len(orbit)
        return sizes

    def min_support(self, budget: int) -> tuple[int, bool]:
        """Smallest support of a non-identity automorphism (branch and bound).

        Inside the subtree of base images x_1..x_j every automorphism g maps
        the refined coloring of the base prefix onto that of the images, so a
        vertex whose two colors differ cannot be fixed by g.  Below the
        all-identity prefix, candidates equivalent under the stabilizer of the
        next base point give conjugate elements and are skipped.
        """
        gens = self.stabilizer_gens(0)
        if not gens:
            return self.n, True
        best = min(int(np.count_nonzero(g != np.arange(self.n))) for g in gens)
        tree = self.tree
        start = tree.refinements
        exhausted = False

        def dfs(seq: tuple, depth: int, ident: bool) -> None:
            nonlocal best, exhausted
            if exhausted:
                return
            if tree.refinements - start > budget:
                exhausted = True
                return
            d = tree.node(seq)
            c = tree.node(self.path[depth])
            if d.key != c.key:
                return
            if not ident and int(np.count_nonzero(d.diag != c.diag)) >= best:
                return
            if depth == self.L:
                if ident:
                    return
                g = tree.leaf_map(c, d)
                if g is not None and tree.is_automorphism(g):
                    best = min(best, int(np.count_nonzero(g != np.arange(self.n))))
                return
            b = self.base[depth]
            cands = [int(y) for y in np.flatnonzero(d.diag == c.diag[b])]
            if ident:
                h = self.stabilizer_gens(depth + 1)
                reps, covered = [b], _orbit(b, h)
                for y in cands:
                    if y not in covered:
                        reps.append(y)
                        covered |= _orbit(y, h)
                cands = reps
            for y in cands:
                dfs(seq + (y,), depth + 1, ident and y == b)

        dfs((), 0, True)
        return best, not exhausted


def automorphisms(cfg: Configuration, motion_budget: int = 200000) -> GroupInfo:
    """Generators, order, orbit count and motion of Aut(cfg)."""
    if cfg.n > caps.cap("oracle"):
        raise TooLarge(f"n={cfg.n} exceeds oracle cap {caps.cap('oracle')}")
    s = _Search(cfg)
    sizes = s.run()
    gens = s.stabilizer_gens(0)
    order = prod(sizes) if sizes else 1
    motion, exact = s.min_support(motion_budget)
    orbits = len(np.unique(_orbit_partition(cfg.n, gens)))
    return GroupInfo(gens, order, motion, orbits, exact, tuple(s.base), s.tree.refinements)


def exact_motion(cfg: Configuration) -> int:
    return automorphisms(cfg).motion


def orbital_configuration(generators: Sequence[Sequence[int]], n: int,
                          require_transitive: bool = True) -> Configuration:
    """Coherent configuration whose colors are the orbits on ordered pairs."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    idx = np.arange(n * n)
    u, v = np.divmod(idx, n)
    if gens:
        rows = np.concatenate([idx] * len(gens))
        cols = np.concatenate([g[u] * n + g[v] for g in gens])
        graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n * n, n * n))
        labels = connected_components(graph, directed=True, connection="weak")[1]
    else:
        labels = idx
    # relabel by first occurrence in row-major order
    first = {}
    for lab in labels:
        if lab not in first:
            first[lab] = len(first)
    color = np.array([first[lab] for lab in labels], dtype=np.int64).reshape(n, n)
    cfg = _make(color, len(first))
    if require_transitive and not cfg.is_homogeneous:
        raise NotTransitive("the group is not transitive on points")
    check_coherence(cfg)
    return cfg


def group_elements(generators: Sequence[np.ndarray], n: int, limit: int = 10**6) -> np.ndarray:
    """All elements of a small permutation group by closure (rows are maps)."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(int(x) for x in g) for g in generators]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                comp = tuple(g[h[i]] for i in range(n))
                if comp not in seen:
                    seen.add(comp)
                    nxt.append(comp)
                    if len(seen) > limit:
                        raise TooLarge("group larger than enumeration limit")
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)
