import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from corpus import corpus
from ccmotion import families as fam
from ccmotion.core import from_adjacency, is_coherent, permute_vertices, validate_configuration
from ccmotion.distinguish import distinguishing_report
from ccmotion.errors import TooLarge
from ccmotion import caps
from ccmotion.wl import (
    greedy_bound,
    greedy_distinguishing_set,
    individualize,
    refine,
    splits_completely,
    wl_round,
    wl_stabilize,
)


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    up = np.triu(rng.random((n, n)) < p, 1)
    return from_adjacency(up | up.T)


def test_cycle_with_a_chord_free_start():
    # C6 adjacency coloring is not coherent; one round gives the distance scheme
    trace = wl_stabilize(from_adjacency(fam.cycle_graph(6)))
    assert trace.rounds == 1
    assert trace.rank_history == [3, 4]
    dist = fam.gen_cycle(6).color
    pairs = set(zip(trace.stable.color.ravel().tolist(), dist.ravel().tolist()))
    assert len(pairs) == 4  # the stable classes are exactly the distance classes
    assert is_coherent(trace.stable)


def test_coherent_inputs_are_fixed_points():
    for name in ("J(5,2)", "H(2,3)", "C9", "L(Petersen)"):
        cfg = corpus()[name]
        assert wl_round(cfg) is cfg
        assert wl_stabilize(cfg).rounds == 0


def test_refinement_is_monotone():
    cfg = random_graph(14, 0.35, 3)
    out = refine(cfg)
    # every new color sits inside exactly one old color
    pairs = {(int(a), int(b)) for a, b in zip(out.color.ravel(), cfg.color.ravel())}
    news = [a for a, _ in pairs]
    assert len(news) == len(set(news))


@settings(max_examples=100, deadline=None)
@given(st.integers(4, 32), st.floats(0.1, 0.9), st.integers(0, 10**6), st.integers(0, 10**6))
def test_wl_round_is_equivariant(n, p, seed, pseed):
    cfg = random_graph(n, p, seed)
    perm = np.random.default_rng(pseed).permutation(n)
    assert wl_round(permute_vertices(cfg, perm)) == permute_vertices(wl_round(cfg), perm)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_stable_output_is_coherent(n, p, seed):
    out = refine(random_graph(n, p, seed))
    assert is_coherent(out)
    assert oracles.is_coherent(out.color)


def test_individualize_and_splitting():
    pet = fam.gen_johnson(5, 2)
    c = individualize(pet, [0])
    assert c.r == pet.r + 1
    assert not splits_completely(pet, [0])
    assert splits_completely(pet, [0, 1, 2, 3])
    assert not splits_completely(pet, [])


def test_wl_cap():
    caps.set_override(5)
    with pytest.raises(TooLarge):
        wl_stabilize(fam.gen_johnson(5, 2))


def _covers(cfg, chosen):
    col = cfg.color
    n = cfg.n
    return all(any(col[x, u] != col[x, v] for x in chosen) for u in range(n) for v in range(u + 1, n))


def test_greedy_petersen():
    pet = fam.gen_johnson(5, 2)
    s = greedy_distinguishing_set(pet)
    assert len(s) <= math.floor(20 * math.log(10) / 6) + 1 == 8
    assert _covers(pet, s)


def test_greedy_complete_and_trivial():
    k5 = validate_configuration(np.ones((5, 5), dtype=int) - np.eye(5, dtype=int))
    s = greedy_distinguishing_set(k5)
    assert len(s) <= 4 and _covers(k5, s)
    one = validate_configuration([[0]])
    assert greedy_distinguishing_set(one) == []


@pytest.mark.parametrize("name", list(corpus()))
def test_greedy_bound_on_corpus(name):
    cfg = corpus()[name]
    s = greedy_distinguishing_set(cfg)
    dmin = distinguishing_report(cfg).dmin
    assert len(s) <= greedy_bound(cfg.n, dmin)
    assert _covers(cfg, s)
