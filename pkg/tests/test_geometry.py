from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from ccmotion import families as fam
from ccmotion import geometry as geo
from ccmotion.core import intersection_tensor
from ccmotion.errors import (
    GeometryViolation,
    NonNegativeTheta,
    NotSmallestEigenvalueMinus2,
    SoundnessError,
    VertexNotInTwoLines,
)
from ccmotion.spectral import constituent_spectrum


def as_nx(adj):
    return nx.from_numpy_array(np.asarray(adj, dtype=int))


def test_t11_geometry_and_root():
    adj = fam.gen_triangular(11).adjacency(1)
    params = geo.metsch_params(adj, 2)
    assert geo.metsch_check(params)
    g = geo.extract_lines(adj, 2, params)
    assert len(g.lines) == 11 and {len(x) for x in g.lines} == {10}
    assert set(g.per_vertex_count) == {2}
    root = geo.reconstruct_root_graph(adj, g)
    assert nx.is_isomorphic(as_nx(root.adj), nx.complete_graph(11))
    assert geo.clique_mu_bound(g, adj) == 4


def test_l25_root_is_k55():
    adj = fam.gen_lattice(5).adjacency(1)
    params = geo.metsch_params(adj, 2)
    assert geo.metsch_check(params)
    g = geo.extract_lines(adj, 2, params)
    root = geo.reconstruct_root_graph(adj, g)
    assert nx.is_isomorphic(as_nx(root.adj), nx.complete_bipartite_graph(5, 5))


def test_metsch_fails_for_small_triangular():
    adj = fam.gen_triangular(9).adjacency(1)
    assert not geo.metsch_check(geo.metsch_params(adj, 2))


@pytest.mark.parametrize("s", range(4, 13))
def test_mu_bound_on_extracted_geometries(s):
    for cfg in (fam.gen_triangular(s), fam.gen_lattice(s)):
        adj = cfg.adjacency(1)
        params = geo.metsch_params(adj, 2)
        if not geo.metsch_check(params):
            continue
        g = geo.extract_lines(adj, 2, params)
        assert geo.graph_mu(adj) <= g.m ** 2
        spec = constituent_spectrum(intersection_tensor(cfg), 1)
        assert geo.smallest_eigenvalue_floor(g, spec)


def test_verify_geometry_errors():
    adj = fam.cycle_graph(4)
    with pytest.raises(GeometryViolation):
        geo.verify_geometry(adj, [(0, 2)], 2)  # not a clique
    with pytest.raises(GeometryViolation):
        geo.verify_geometry(adj, [(0, 1)], 2)  # edges left uncovered
    tri = np.ones((3, 3), dtype=bool) & ~np.eye(3, dtype=bool)
    with pytest.raises(GeometryViolation):
        geo.verify_geometry(tri, [(0, 1, 2), (0, 1)], 2)


def test_root_graph_needs_two_lines_per_vertex():
    tri = np.ones((3, 3), dtype=bool) & ~np.eye(3, dtype=bool)
    g = geo.CliqueGeometry(((0, 1, 2),), (1, 1, 1), 2)
    with pytest.raises(VertexNotInTwoLines):
        geo.reconstruct_root_graph(tri, g)


@pytest.mark.parametrize("base", ["petersen", "heawood", "k33", "c7"])
def test_line_graph_roots(base):
    y = {"petersen": fam.petersen_graph, "heawood": fam.heawood_graph,
         "k33": lambda: fam.complete_bipartite(3, 3), "c7": lambda: fam.cycle_graph(7)}[base]()
    lg, _ = fam.line_graph(y)
    root = geo.line_graph_root(lg)
    assert root is not None
    assert nx.is_isomorphic(as_nx(root.adj), as_nx(y))


def test_line_graph_root_rejects():
    assert geo.line_graph_root(fam.gen_triangular(7).adjacency(1)) is None  # root has triangles
    assert geo.line_graph_root(fam.petersen_graph()) is None


@pytest.mark.parametrize("s", range(4, 13))
def test_srg_recognizer_round_trip(s):
    t = (s * (s - 1) // 2, 2 * (s - 2), s - 2, 4)
    l2 = (s * s, 2 * (s - 1), s - 2, 2)
    assert geo.recognize_srg_minus2(*t) == geo.SrgVerdict("Triangular", s)
    assert geo.recognize_srg_minus2(*l2) == geo.SrgVerdict("Lattice", s)
    # parameters read from the generated schemes agree
    assert intersection_tensor(fam.gen_triangular(s)).srg_parameters([1]) == t
    assert intersection_tensor(fam.gen_lattice(s)).srg_parameters([1]) == l2


def test_srg_recognizer_other_cases():
    assert geo.recognize_srg_minus2(10, 3, 0, 1).kind == "Sporadic"  # Petersen
    assert geo.recognize_srg_minus2(27, 16, 10, 8).kind == "Sporadic"  # Schlaefli
    with pytest.raises(NotSmallestEigenvalueMinus2):
        geo.recognize_srg_minus2(13, 6, 2, 3)
    assert not geo.srg_smallest_is_minus2(13, 6, 2, 3)


def test_delsarte_clique_size():
    assert geo.delsarte_clique_size(10, -2) == 6  # T(7): cliques of size s - 1
    assert geo.delsarte_clique_size(3, -2) == Fraction(5, 2)
    with pytest.raises(NonNegativeTheta):
        geo.delsarte_clique_size(3, 0)


def test_claw_search():
    h = fam.gen_hamming(2, 3)
    found = geo.claw_search(h, [1], [2], 2)
    assert found is not None
    x, ys = found
    assert all(h.color[x, y] == 1 for y in ys)
    assert h.color[ys[0], ys[1]] == 2
    # a claw of three mutually non-adjacent neighbors does not exist in H(2,3)
    assert geo.claw_search(h, [1], [2], 3) is None


def test_clique_mu_bound_detects_violation():
    adj = fam.cycle_graph(4)  # mu = 2 > 1
    g = geo.CliqueGeometry(((0, 1),), (1, 1, 0, 0), 1)
    with pytest.raises(SoundnessError):
        geo.clique_mu_bound(g, adj)
