"""Two-dimensional Weisfeiler-Leman refinement and individualization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import caps
from .core import Configuration, _make, densify, pair_signature_classes
from .errors import TooLarge


@dataclass(frozen=True)
class RefinementTrace:
    rounds: int
    rank_history: list[int] = field(default_factory=list)
    stable: Configuration | None = None

    def to_dict(self) -> dict:
        return {"rounds": self.rounds, "rank_history": list(self.rank_history),
                "n": self.stable.n, "r": self.stable.r}


def wl_round(cfg: Configuration) -> Configuration:
    """One refinement round.

    The input is returned unchanged when no class splits, so coherent
    configurations are fixed points with their original ids.
    """
    cls, count = pair_signature_classes(cfg.color, cfg.r)
    if count == cfg.r:
        return cfg
    return _make(cls, count)


def wl_stabilize(cfg: Configuration) -> RefinementTrace:
    if cfg.n > caps.cap("wl"):
        raise TooLarge(f"n={cfg.n} exceeds refinement cap {caps.cap('wl')}")
    history = [cfg.r]
    rounds = 0
    cur = cfg
    while True:
        nxt = wl_round(cur)
        if nxt is cur:
            break
        rounds += 1
        history.append(nxt.r)
        cur = nxt
    return RefinementTrace(rounds, history, cur)


def refine(cfg: Configuration) -> Configuration:
    return wl_stabilize(cfg).stable


def individualize(cfg: Configuration, vertices: Sequence[int]) -> Configuration:
    """Give each listed vertex, in order, a fresh vertex color.

    Ids are compacted afterwards (order preserving) so that a color emptied
    by the operation does not leave a gap.
    """
    c = cfg.color.astype(np.int64)
    fresh = cfg.r
    for v in vertices:
        c[v, v] = fresh
        fresh += 1
    return _make(densify(c))


def splits_completely(cfg: Configuration, vertices: Iterable[int]) -> bool:
    s = list(vertices)
    stable = refine(individualize(cfg, s) if s else cfg)
    return len(np.unique(np.diagonal(stable.color))) == cfg.n


def greedy_distinguishing_set(cfg: Configuration) -> list[int]:
    """Greedy cover of all vertex pairs by distinguishing vertices.

    Each step adds the vertex that distinguishes the most pairs not yet
    distinguished; ties go to the lowest vertex id.
    """
    n = cfg.n
    if n <= 1:
        return []
    col = cfg.color.astype(np.int64)
    # sep[x, u, v] would be n^3 booleans; evaluate per candidate instead
    open_pairs = np.triu(np.ones((n, n), dtype=bool), 1)
    chosen: list[int] = []
    while open_pairs.any():
        best, best_gain = -1, 0
        for x in range(n):
            row = col[x]
            gain = int(np.count_nonzero(open_pairs & (row[:, None] != row[None, :])))
            if gain > best_gain:
                best, best_gain = x, gain
        if best < 0:
            break  # remaining pairs cannot be distinguished by any vertex
        row = col[best]
        open_pairs &= row[:, None] == row[None, :]
        chosen.append(best)
    return chosen


def greedy_bound(n: int, dmin: int) -> float:
    """Size bound 2 n ln n / Dmin + 1 for the greedy distinguishing set."""
    if n <= 1:
        return 1.0
    return 2 * n * math.log(n) / dmin + 1
