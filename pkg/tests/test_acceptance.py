"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import json
import math
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from corpus import corpus, rank4, small
from ccmotion import ccf
from ccmotion import families as fam
from ccmotion import geometry as geo
from ccmotion.certify import Certificate, certify, replay, sun_wilmes_check
from ccmotion.core import check_identities, intersection_tensor, permute_vertices
from ccmotion.distinguish import best_bounded_degree_bound, distinguishing_report
from ccmotion.errors import NotPrimitive, NotTriangular
from ccmotion.oracle import automorphisms
from ccmotion.spectral import (
    certified_spectral_bound,
    constituent_spectrum,
    dense_eigenvalues,
    rank4_cubic,
    root_perturbation,
)
from ccmotion.wl import greedy_distinguishing_set, refine, wl_round


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
        assert ok, detail
    return emit


def _as_nx(adj):
    return nx.from_numpy_array(np.asarray(adj, dtype=int))


def test_criterion_1_identities(report):
    start = time.perf_counter()
    bad = {}
    for name, cfg in corpus().items():
        errs = check_identities(cfg, intersection_tensor(cfg))
        if errs:
            bad[name] = errs
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 60,
           f"{len(corpus())} instances, identity failures {len(bad)}, {elapsed:.1f}s (< 60s)")


def test_criterion_2_cubic(report):
    cub = rank4_cubic(intersection_tensor(fam.gen_hamming(3, 2)), 1)
    coeffs_ok = (cub.a1, cub.a2, cub.a3) == (3, -1, -3)
    roots_ok = np.allclose(sorted(cub.roots()), [-3, -1, 1], atol=1e-9)
    worst = 0.0
    checked = 0
    for name, cfg in rank4(corpus()).items():
        t = intersection_tensor(cfg)
        for c in t.edge_colors:
            roots = np.array(rank4_cubic(t, c).roots())
            ev = dense_eigenvalues(cfg.adjacency(c))
            ev = ev[np.abs(ev - t.k[c]) > 1e-6] if np.any(np.abs(ev - t.k[c]) > 1e-6) else ev
            for v in ev:
                worst = max(worst, float(np.min(np.abs(roots - v))))
            checked += 1
    report(2, coeffs_ok and roots_ok and worst <= 1e-6 and checked > 0,
           f"cube cubic {(cub.a1, cub.a2, cub.a3)}, {checked} rank-4 constituents, max root error {worst:.1e}")


def test_criterion_3_eigenvalue_formulas(report):
    fails = []
    for m in range(5, 10):
        spec = constituent_spectrum(intersection_tensor(fam.gen_johnson(m, 2)), 1)
        want = sorted((2 - j) * (m - 2 - j) - j for j in range(1, 3))
        got = sorted(spec.nontrivial)
        if got != want or not all(type(v) is int for v in got):
            fails.append(f"J({m},2)")
    for m in (3, 4):
        spec = constituent_spectrum(intersection_tensor(fam.gen_hamming(2, m)), 1)
        want = sorted(2 * (m - 1) - j * m for j in range(1, 3))
        got = sorted(spec.nontrivial)
        if got != want or not all(type(v) is int for v in got):
            fails.append(f"H(2,{m})")
    report(3, not fails, f"J(m,2) 5<=m<=9 and H(2,m) m in 3,4 exact; failures {fails}")


def _bounds(cfg):
    """Every lower bound the package emits for this configuration."""
    out = []
    t = intersection_tensor(cfg)
    if not t.homogeneous:
        return out
    out.append(("Dmin", distinguishing_report(cfg, t).dmin))
    seen = set()
    for i in t.edge_colors:
        cols = tuple(sorted({i, t.pairing[i]}))
        if cols in seen:
            continue
        seen.add(cols)
        out.append((f"spectral{cols}", certified_spectral_bound(t, cols)[0]))
        try:
            out.append((f"clique-distinguishing{cols}", sun_wilmes_check(cfg, cols).bound))
        except NotTriangular:
            pass
    if t.r >= 3:
        try:
            out.append(("bounded-degree", best_bounded_degree_bound(t)[1]))
        except NotPrimitive:
            pass
    for b in certify(cfg).bounds:
        out.append(("certify", b))
    return [(k, b) for k, b in out if b is not None]


def test_criterion_4_soundness(report):
    start = time.perf_counter()
    violations, total, inexact = [], 0, []
    for name, cfg in small(60).items():
        info = automorphisms(cfg)
        if not info.exact:
            inexact.append(name)
            continue
        for what, b in _bounds(cfg):
            total += 1
            if Fraction(b) > info.motion:
                violations.append((name, what, str(b), info.motion))
    elapsed = time.perf_counter() - start
    ok = not violations and not inexact and elapsed < 600
    report(4, ok, f"{len(small(60))} instances, {total} bounds, {len(violations)} violations "
                  f"{violations[:3]}, non-exact {inexact}, {elapsed:.1f}s (< 600s)")


def test_criterion_5_tightness(report):
    pet = fam.gen_johnson(5, 2)
    dmin = distinguishing_report(pet).dmin
    m_pet = automorphisms(pet).motion
    m_h23 = automorphisms(fam.gen_hamming(2, 3)).motion
    t7 = fam.gen_triangular(7)
    m_t7 = automorphisms(t7).motion
    b_t7, _ = certified_spectral_bound(intersection_tensor(t7), [1])
    cam = fam.cameron_min_degree(5, 2, 1, True)
    ok = (dmin == 6 == m_pet and m_h23 == 6 == fam.hamming_motion_upper(2, 3)
          and m_t7 == 10 and b_t7 == Fraction(21, 5) and cam == 6 == m_pet)
    report(5, ok, f"Petersen Dmin {dmin} motion {m_pet}; H(2,3) motion {m_h23}; "
                  f"T(7) motion {m_t7} spectral {b_t7}; Cameron degree {cam}")


def _random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    return (a | a.T).astype(np.int64) + np.eye(n, dtype=np.int64) * 2


def test_criterion_6_wl(report):
    from ccmotion.core import is_coherent, validate_configuration
    rng = np.random.default_rng(2024)
    equi = 0
    for _ in range(100):
        n = int(rng.integers(4, 33))
        cfg = validate_configuration(_random_graph(n, float(rng.uniform(0.2, 0.8)), int(rng.integers(1 << 30))))
        perm = rng.permutation(n)
        equi += wl_round(permute_vertices(cfg, perm)) == permute_vertices(wl_round(cfg), perm)
    coherent = sum(is_coherent(refine(validate_configuration(_random_graph(n, 0.4, n)))) for n in range(4, 24))
    fixed = sum(refine(cfg) == cfg for cfg in corpus().values())
    greedy_ok = 0
    for cfg in corpus().values():
        dmin = distinguishing_report(cfg).dmin
        greedy_ok += len(greedy_distinguishing_set(cfg)) <= 2 * cfg.n * math.log(cfg.n) / dmin + 1
    m = len(corpus())
    ok = equi == 100 and coherent == 20 and fixed == m and greedy_ok == m
    report(6, ok, f"equivariant {equi}/100, stable coherent {coherent}/20, "
                  f"fixed points {fixed}/{m}, greedy size bound {greedy_ok}/{m}")


def test_criterion_7_geometry(report):
    adj = fam.gen_triangular(11).adjacency(1)
    params = geo.metsch_params(adj, 2)
    metsch = geo.metsch_check(params)
    g = geo.extract_lines(adj, 2, params)
    lines_ok = len(g.lines) == 11 and {len(x) for x in g.lines} == {10} and set(g.per_vertex_count) == {2}
    root_t = geo.reconstruct_root_graph(adj, g)
    k11 = nx.is_isomorphic(_as_nx(root_t.adj), nx.complete_graph(11))
    adj5 = fam.gen_lattice(5).adjacency(1)
    g5 = geo.extract_lines(adj5, 2)
    k55 = nx.is_isomorphic(_as_nx(geo.reconstruct_root_graph(adj5, g5).adj), nx.complete_bipartite_graph(5, 5))
    mu_ok, geoms = True, 0
    for s in range(4, 13):
        for cfg in (fam.gen_triangular(s), fam.gen_lattice(s)):
            a = cfg.adjacency(1)
            p = geo.metsch_params(a, 2)
            if geo.metsch_check(p):
                gg = geo.extract_lines(a, 2, p)
                mu_ok &= geo.graph_mu(a) <= gg.m ** 2
                geoms += 1
            spec = constituent_spectrum(intersection_tensor(cfg), 1)
            # the decision uses integer or rational eigenvalues only
            mu_ok &= spec.smallest_is(-2) and all(isinstance(v, (int, Fraction)) for v in spec.nontrivial)
    exact_srg = geo.srg_smallest_is_minus2(55, 18, 9, 4) and not geo.srg_smallest_is_minus2(13, 6, 2, 3)
    ok = metsch and lines_ok and k11 and k55 and mu_ok and exact_srg and geoms > 0
    report(7, ok, f"T(11) metsch {metsch}, 11 lines of size 10 {lines_ok}, root K11 {k11}, "
                  f"L2(5) root K5,5 {k55}, mu <= m^2 on {geoms} geometries {mu_ok}")


def test_criterion_8_recognizers(report):
    rt = all(
        geo.recognize_srg_minus2(*intersection_tensor(fam.gen_triangular(s)).srg_parameters([1]))
        == geo.SrgVerdict("Triangular", s)
        and geo.recognize_srg_minus2(*intersection_tensor(fam.gen_lattice(s)).srg_parameters([1]))
        == geo.SrgVerdict("Lattice", s)
        for s in range(4, 13))
    johnson = [m for m in range(4, 10) if str(certify(fam.gen_johnson(m, 2)).verdict) != "Exceptional(Johnson)"]
    hamming = [m for m in (2, 3, 4) if str(certify(fam.gen_hamming(2, m)).verdict) != "Exceptional(Hamming)"]
    report(8, rt and not johnson and not hamming,
           f"SRG round trip {rt}; Johnson misses {johnson}; Hamming misses {hamming}")


def test_criterion_9_root_perturbation(report):
    rng = np.random.default_rng(9)
    worst, bad = -math.inf, 0
    for trial in range(1000):
        deg = 3 if trial % 2 else 4
        f = [1] + [int(x) for x in rng.integers(-9, 10, size=deg)]
        g = [1] + [c + float(e) for c, e in zip(f[1:], rng.uniform(-1, 1, size=deg))]
        res = root_perturbation(f, g)
        worst = max(worst, res.distance - res.eps)
        bad += res.distance > res.eps + 1e-9
    same = root_perturbation([1, -6, 11, -6], [1, -6, 11, -6])
    ok = bad == 0 and same.eps == 0 and same.distance == 0
    report(9, ok, f"1000 perturbed polynomials, {bad} over the bound (max distance-eps {worst:.3g}); "
                  f"equal polynomials give eps={same.eps}")


def test_criterion_10_replay(report, tmp_path):
    mismatched, steps, ccf_bad = [], 0, []
    for name, cfg in corpus().items():
        path = tmp_path / "cert.json"
        path.write_text(certify(cfg).to_json())
        stored = Certificate.from_dict(json.loads(path.read_text()))
        res = replay(stored, cfg)
        steps += len(res)
        if not all(res):
            mismatched.append(name)
        if ccf.loads(ccf.dumps(cfg)) != cfg:
            ccf_bad.append(name)
    report(10, not mismatched and not ccf_bad and steps > 0,
           f"{len(corpus())} certificates, {steps} steps replayed, mismatches {mismatched}, "
           f"CCF round-trip failures {ccf_bad}")
