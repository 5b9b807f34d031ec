"""Distinguishing numbers and the purely combinatorial motion bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import caps
from .core import Configuration, IntersectionTensor, intersection_tensor
from .errors import (
    BadAlpha,
    DegreeTooLarge,
    NotCoherent,
    NotHomogeneousCoherent,
    NotPrimitive,
    SameVertex,
    SoundnessError,
)


def pair_distinguishing(cfg: Configuration, u: int, v: int) -> int:
    """Number of x with c(x,u) != c(x,v); u and v themselves always count."""
    if u == v:
        raise SameVertex("u and v must differ")
    return int(np.count_nonzero(cfg.color[:, u] != cfg.color[:, v]))


def distinguishing_matrix(cfg: Configuration) -> np.ndarray:
    """D[u, v] for all ordered pairs (zero on the diagonal)."""
    col = cfg.color
    n = cfg.n
    out = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        out[u] = np.count_nonzero(col[:, [u]] != col, axis=0)
    return out


def color_distinguishing(tensor: IntersectionTensor, i: int) -> int:
    """D(i) from intersection numbers: x fails to distinguish a pair of color
    i exactly when c(x,u) = c(x,v) = a for some a, i.e. c(u,x) = a*."""
    star = tensor.pairing
    same = sum(int(tensor.p[star[a], a, i]) for a in range(tensor.r))
    return tensor.n - same


@dataclass(frozen=True)
class DistinguishReport:
    d_by_color: dict[int, int]
    dmin: int
    dist_table: dict[int, dict[int, int]]
    D: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "dmin": self.dmin,
            "d_by_color": {str(k): v for k, v in self.d_by_color.items()},
            "dist_table": {str(i): {str(j): d for j, d in row.items()}
                           for i, row in self.dist_table.items()},
        }


def distinguishing_report(cfg: Configuration, tensor: IntersectionTensor | None = None,
                          audit: bool | None = None) -> DistinguishReport:
    """D(i) per edge color, Dmin and the color-distance table.

    D(i) is counted on the first pair of color i; with ``audit`` the count is
    repeated on every pair and compared (on by default up to the audit cap).
    """
    try:
        tensor = tensor or intersection_tensor(cfg)
    except NotCoherent as exc:
        raise NotHomogeneousCoherent(str(exc)) from exc
    if not tensor.homogeneous:
        raise NotHomogeneousCoherent("configuration is not homogeneous")
    if audit is None:
        audit = cfg.n <= caps.cap("audit")
    n = cfg.n
    d_by_color: dict[int, int] = {}
    flat = cfg.color.ravel()
    for i in tensor.edge_colors:
        u, v = divmod(int(np.flatnonzero(flat == i)[0]), n)
        d_by_color[i] = pair_distinguishing(cfg, u, v)
    D = None
    if audit:
        D = distinguishing_matrix(cfg)
        expect = np.zeros(tensor.r, dtype=np.int64)
        for i, d in d_by_color.items():
            expect[i] = d
        if not np.array_equal(D, expect[cfg.color.astype(np.int64)]):
            raise SoundnessError("distinguishing number is not constant on a color class")
    dmin = min(d_by_color.values()) if d_by_color else n
    dist_table = {i: dict(tensor.distances(i)) for i in tensor.edge_colors}
    return DistinguishReport(d_by_color, dmin, dist_table, D)


def bounded_degree_bound(tensor: IntersectionTensor, delta) -> Fraction:
    """min(delta, 1-delta) / (6(r-1)) * n, a lower bound on Dmin when every
    constituent has degree at most delta*n (primitive, rank at least 3)."""
    delta = Fraction(delta)
    n = tensor.n
    for i in tensor.edge_colors:
        if int(tensor.k[i]) > delta * n:
            raise DegreeTooLarge(f"k_{i}={int(tensor.k[i])} > {delta}*{n}")
    if not tensor.homogeneous or not all(tensor.connected(i) for i in tensor.edge_colors):
        raise NotPrimitive("the bounded-degree bound needs a primitive configuration")
    return min(delta, 1 - delta) / (6 * (tensor.r - 1)) * n


def best_bounded_degree_bound(tensor: IntersectionTensor) -> tuple[Fraction, Fraction]:
    """Choose delta to maximize the bound: the smallest admissible delta, or
    1/2 when that is smaller.  Returns (delta, bound)."""
    kmax = max(int(tensor.k[i]) for i in tensor.edge_colors)
    delta = max(Fraction(kmax, tensor.n), Fraction(1, 2))
    return delta, bounded_degree_bound(tensor, delta)


def wielandt_thickness_bound(alpha, n) -> float:
    """(3 / alpha) ln n."""
    if not (0 < alpha <= 1):
        raise BadAlpha(f"alpha must lie in (0, 1], got {alpha}")
    if n < 2:
        raise BadAlpha("n must be at least 2")
    return 3.0 / float(alpha) * math.log(n)
