"""The generated instance corpus shared by the tests."""

from __future__ import annotations

import functools
import json
from pathlib import Path

import numpy as np

from ccmotion import families as fam
from ccmotion.oracle import orbital_configuration

DATA = Path(__file__).parent / "data"


def johnson_params():
    return [(m, d) for d in (2, 3) for m in range(2 * d, 10)]


def hamming_params():
    return [(d, m) for d in (1, 2, 3) for m in (2, 3, 4)]


@functools.lru_cache(maxsize=None)
def corpus() -> dict:
    out = {}
    for m, d in johnson_params():
        out[f"J({m},{d})"] = fam.gen_johnson(m, d)
    for d, m in hamming_params():
        out[f"H({d},{m})"] = fam.gen_hamming(d, m)
    for s in range(4, 13):
        out[f"T({s})"] = fam.gen_triangular(s)
        out[f"L2({s})"] = fam.gen_lattice(s)
    out["L(Petersen)"] = fam.line_graph_scheme(fam.petersen_graph()).config
    out["L(K33)"] = fam.line_graph_scheme(fam.complete_bipartite(3, 3)).config
    out["L(Heawood)"] = fam.line_graph_scheme(fam.heawood_graph()).config
    for n in range(3, 21):
        out[f"C{n}"] = fam.gen_cycle(n)
    return out


@functools.lru_cache(maxsize=None)
def extra() -> dict:
    """Instances beyond the acceptance corpus: rank-4 primitive schemes and
    oriented configurations."""
    out = {
        "Paley(13)": fam.gen_paley(13),
        "Paley(17)": fam.gen_paley(17),
        "Cyc(13,3)": fam.gen_cyclotomic(13, 3),
        "Cyc(19,3)": fam.gen_cyclotomic(19, 3),
        "Cyc(31,3)": fam.gen_cyclotomic(31, 3),
        "Cyc(37,3)": fam.gen_cyclotomic(37, 3),
        "Aff(5;2,2,2)": fam.gen_affine_fusion(5, [2, 2, 2]),
        "Aff(7;2,2,4)": fam.gen_affine_fusion(7, [2, 2, 4]),
        "Crown(5)": fam.gen_crown(5),
        "Z4": orbital_configuration([[1, 2, 3, 0]], 4),
        "Cyc(7,2)": fam.gen_cyclotomic(7, 2),
    }
    groups = json.loads((DATA / "oriented_groups.json").read_text())
    g = groups["affine_3_3"]
    out["Aff27-oriented"] = orbital_configuration(g["generators"], g["n"])
    return out


def small(limit: int = 60) -> dict:
    both = dict(corpus())
    both.update(extra())
    return {k: v for k, v in both.items() if v.n <= limit}


def rank4(cfgs: dict) -> dict:
    return {k: v for k, v in cfgs.items() if v.r == 4}


def oriented_group(name: str):
    g = json.loads((DATA / "oriented_groups.json").read_text())[name]
    return orbital_configuration(g["generators"], g["n"])


def relabel(cfg, rng: np.random.Generator):
    from ccmotion.core import permute_vertices
    perm = rng.permutation(cfg.n)
    return permute_vertices(cfg, perm), perm
