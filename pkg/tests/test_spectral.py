from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from corpus import extra, rank4, small
from ccmotion import families as fam
from ccmotion.core import intersection_tensor, order_by_degree
from ccmotion.errors import DegreeMismatch, HypothesisViolated, NotMonic, WrongRank
from ccmotion.spectral import (
    certified_spectral_bound,
    constituent_spectrum,
    dense_eigenvalues,
    rank4_cubic,
    root_perturbation,
    spectral_motion_bound,
    union_spectrum,
    xi_bound_x1,
    xi_bound_x12,
)


def _dense_distinct(vals, tol=1e-6):
    out = []
    for v in sorted(vals):
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    return out


@pytest.mark.parametrize("name", sorted(small(64)))
def test_spectra_match_dense(name):
    cfg = small(64)[name]
    t = intersection_tensor(cfg)
    for i in t.edge_colors:
        spec = constituent_spectrum(t, i)
        cols = sorted({i, t.pairing[i]})
        adj = cfg.adjacency(cols)
        ev = oracles.adjacency_eigenvalues(adj | adj.T)
        distinct = _dense_distinct(ev)
        got = sorted(float(x) for x in set(spec.nontrivial) | {spec.k})
        assert np.allclose(got, distinct, atol=1e-6), (i, got, distinct)
        assert float(spec.xi) == pytest.approx(oracles.zero_weight_radius(adj | adj.T), abs=1e-6)
        assert spec.xi_at_most(spec.xi_upper())


@pytest.mark.parametrize("m", range(5, 10))
def test_johnson_eigenvalues_exact(m):
    t = intersection_tensor(fam.gen_johnson(m, 2))
    spec = constituent_spectrum(t, 1)
    want = fam.johnson_eigenvalues(m, 2)
    assert spec.k == want[0]
    assert sorted(spec.nontrivial) == sorted(want[1:])
    assert all(isinstance(v, int) for v in spec.nontrivial)


@pytest.mark.parametrize("m", (3, 4))
def test_hamming_eigenvalues_exact(m):
    t = intersection_tensor(fam.gen_hamming(2, m))
    spec = constituent_spectrum(t, 1)
    want = fam.hamming_eigenvalues(2, m)
    assert spec.k == want[0]
    assert sorted(spec.nontrivial) == sorted(want[1:])


def test_oriented_colors_use_symmetrization():
    cfg = fam.gen_cyclotomic(7, 2)  # Paley tournament
    t = intersection_tensor(cfg)
    spec = constituent_spectrum(t, 1)
    assert spec.symmetrized and spec.colors == (1, 2)
    assert spec.k == 6 and list(spec.nontrivial) == [-1]


def test_smallest_eigenvalue_decisions():
    for s in range(4, 13):
        for cfg in (fam.gen_triangular(s), fam.gen_lattice(s)):
            t = intersection_tensor(cfg)
            assert constituent_spectrum(t, 1).smallest_is(-2)
    cube = intersection_tensor(fam.gen_hamming(3, 2))
    assert not constituent_spectrum(cube, 1).smallest_is(-2)
    assert constituent_spectrum(cube, 1).smallest_at_least(-3)
    assert not constituent_spectrum(cube, 1).smallest_at_least(-2)


def test_t7_spectral_bound():
    t = intersection_tensor(fam.gen_triangular(7))
    b, ev = certified_spectral_bound(t, [1])
    assert b == Fraction(21, 5)
    assert ev["k"] == 10 and ev["q"] == 5 and ev["xi_upper"] == 3


def test_spectral_motion_bound_formula():
    assert spectral_motion_bound(21, 10, 3, 5) == Fraction(21, 5)
    assert spectral_motion_bound(10, 3, 2, 1) == 0
    with pytest.raises(ValueError):
        spectral_motion_bound(10, 0, 0, 0)


@pytest.mark.parametrize("name", sorted(small(30)))
def test_spectral_bound_matches_brute_force(name):
    cfg = small(30)[name]
    t = intersection_tensor(cfg)
    for i in t.edge_colors:
        cols = sorted({i, t.pairing[i]})
        b, _ = certified_spectral_bound(t, cols)
        ref = oracles.spectral_bound(cfg.adjacency(cols))
        assert float(b) == pytest.approx(float(ref), abs=1e-6)


def test_cube_cubic():
    t = intersection_tensor(fam.gen_hamming(3, 2))
    cub = rank4_cubic(t, 1)
    assert (cub.a1, cub.a2, cub.a3) == (3, -1, -3)
    assert np.allclose(cub.roots(), [-3, -1, 1])


@pytest.mark.parametrize("name", sorted(rank4(small(64))))
def test_cubic_roots_match_dense(name):
    cfg = small(64)[name]
    t = intersection_tensor(cfg)
    if not t.symmetric:
        with pytest.raises(WrongRank):
            rank4_cubic(t, 1)
        return
    for c in t.edge_colors:
        cub = rank4_cubic(t, c)
        roots = np.array(cub.roots())
        ev = _dense_distinct(dense_eigenvalues(cfg.adjacency(c)))
        nontrivial = [v for v in ev if abs(v - t.k[c]) > 1e-6] or ev
        for v in nontrivial:
            assert np.min(np.abs(roots - v)) < 1e-6


def test_cubic_needs_rank4():
    with pytest.raises(WrongRank):
        rank4_cubic(intersection_tensor(fam.gen_johnson(5, 2)))


def test_union_spectrum_x12():
    cfg = order_by_degree(fam.gen_affine_fusion(7, [2, 2, 4]))
    t = intersection_tensor(cfg)
    spec = union_spectrum(t, (1, 2))
    adj = cfg.adjacency((1, 2))
    assert float(spec.xi) == pytest.approx(oracles.zero_weight_radius(adj))


def test_closed_form_bounds():
    for name, cfg in rank4(extra()).items():
        t = intersection_tensor(order_by_degree(cfg))
        if not t.symmetric:
            continue
        for eps in (Fraction(1), Fraction(1, 2)):
            try:
                xi_bound_x1(t, eps)
            except HypothesisViolated:
                pass
            try:
                xi_bound_x12(t, eps)
            except HypothesisViolated:
                pass
    t = intersection_tensor(order_by_degree(fam.gen_affine_fusion(7, [2, 2, 4])))
    with pytest.raises(HypothesisViolated):
        xi_bound_x1(t, Fraction(1, 10**6))
    assert xi_bound_x1(t, Fraction(1)) >= float(constituent_spectrum(t, 1).xi)


def test_root_perturbation_equal_and_errors():
    res = root_perturbation([1, -6, 11, -6], [1, -6, 11, -6])
    assert res.distance == 0
    assert res.eps == 0
    with pytest.raises(DegreeMismatch):
        root_perturbation([1, 0, 1], [1, 0])
    with pytest.raises(NotMonic):
        root_perturbation([2, 0, 1], [1, 0, 1])


def test_root_perturbation_quadratic():
    res = root_perturbation([1, 0, -1], [1, 0, -1.21])
    assert res.distance == pytest.approx(0.1)
    assert res.eps == pytest.approx(2 * 2 * (0.21) ** 0.5, rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 4), st.lists(st.integers(-9, 9), min_size=4, max_size=4),
       st.lists(st.floats(-1.0, 1.0), min_size=4, max_size=4))
def test_root_perturbation_property(deg, coeffs, noise):
    f = [1] + coeffs[:deg]
    g = [1] + [c + e for c, e in zip(coeffs[:deg], noise)]
    res = root_perturbation(f, g)
    assert res.distance <= res.eps + 1e-9
