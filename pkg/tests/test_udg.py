import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import T3, clustered, graph_of, uniform_box, wheel
from oracles import brute_disk_clique, brute_omega, expand
from udgcolor.udg import (WeightedPointSet, average_degree, build_graph, check_cor_radius,
                          check_reuleaux_inequality, clique_number, connected_components,
                          degree_profile, disk_clique_number, hop_diameter, max_disk_weight,
                          site_degrees, structural_checks, weighted_average_degree)


def small_sets(max_n=12, box=2.5):
    pt = st.tuples(st.floats(0, box), st.floats(0, box))
    return st.lists(pt, min_size=1, max_size=max_n)


# -- construction --------------------------------------------------------------


def test_t3_is_triangle(t3):
    assert t3.n == 3
    assert sorted(map(tuple, t3.edges().tolist())) == [(0, 1), (0, 2), (1, 2)]


def test_far_pair_is_edgeless():
    g = graph_of([(0, 0), (2, 0)])
    assert g.n == 2 and len(g.edges()) == 0


def test_multiplicity_expands_to_clique():
    g = build_graph(WeightedPointSet.from_points([(0, 0)], [3]))
    assert g.n == 3 and len(g.edges()) == 3
    assert clique_number(g) == 3


@pytest.mark.parametrize("mult", [[0], [-1], [1.5]])
def test_rejects_bad_multiplicity(mult):
    with pytest.raises(ValueError):
        WeightedPointSet.from_points([(0, 0)], mult)


def test_rejects_nonfinite():
    with pytest.raises(ValueError):
        WeightedPointSet.from_points([(0, np.nan)])


def test_boundary_distance_one_is_adjacent():
    g = graph_of([(0, 0), (0.6, 0.8)])
    assert g.has_edge(0, 1)


@given(small_sets(15))
def test_adjacency_matches_pairwise_definition(pts):
    pts = np.array(pts)
    g = graph_of(pts)
    d2 = ((pts[:, None] - pts[None]) ** 2).sum(-1)
    want = (d2 <= 1.0) & ~np.eye(len(pts), dtype=bool)
    assert np.array_equal(g.adjacency_matrix().toarray().astype(bool), want)


def test_bucket_index_agrees_with_dense_on_large_input():
    pts = uniform_box(3000, 20, 20, seed=5)
    g = graph_of(pts)
    sub = pts[:400]
    d2 = ((sub[:, None] - pts[None]) ** 2).sum(-1)
    want = ((d2 <= 1.0).sum(1) - 1)
    assert np.array_equal(g.degrees[:400], want)


# -- clique numbers ------------------------------------------------------------


def test_clique_number_examples(t3):
    assert clique_number(t3) == 3
    assert clique_number(graph_of([(0, 0), (2, 0)])) == 1
    assert clique_number(graph_of(np.empty((0, 2)))) == 0


@given(small_sets(14))
def test_clique_number_matches_exhaustive(pts):
    assert clique_number(graph_of(pts)) == brute_omega(pts)


def test_clique_number_on_clusters():
    pts = clustered(4, 8, 0.3, 3.0, seed=2)
    assert clique_number(graph_of(pts)) == brute_omega(pts)


def test_clique_number_points_on_the_split_line():
    # several points exactly on the segment uv land on one side
    pts = [(0, 0), (0.25, 0), (0.5, 0), (0.75, 0), (1, 0), (0.5, 0.3), (0.5, -0.3)]
    assert clique_number(graph_of(pts)) == brute_omega(pts)


def test_disk_clique_examples(t3):
    assert disk_clique_number(graph_of([(0, 0), (1, 0)])) == 2
    assert disk_clique_number(build_graph(WeightedPointSet.from_points([(3, 3)], [7]))) == 7
    assert disk_clique_number(t3) == 3


@given(small_sets(10))
def test_disk_clique_matches_oracle(pts):
    assert disk_clique_number(graph_of(pts)) == brute_disk_clique(pts)


@given(small_sets(10))
def test_disk_clique_at_most_clique(pts):
    g = graph_of(pts)
    assert disk_clique_number(g) <= clique_number(g)


@given(small_sets(6, box=1.5), st.lists(st.integers(1, 4), min_size=6, max_size=6))
def test_weighted_arithmetic_matches_expansion(pts, mult):
    mult = mult[:len(pts)]
    ps = WeightedPointSet.from_points(pts, mult)
    flat = expand(pts, mult)
    assert max_disk_weight(ps.positions, ps.multiplicities) == brute_disk_clique(flat)
    g = build_graph(ps)
    assert np.array_equal(np.repeat(site_degrees(ps), ps.multiplicities), g.degrees)
    assert weighted_average_degree(ps) == pytest.approx(average_degree(g))
    assert clique_number(g) == brute_omega(flat)


# -- degree profiles and checks --------------------------------------------------


def test_degree_profile_t3_middle(t3):
    prof = degree_profile(t3, 1)
    assert [(round(r, 6), c) for r, c in prof.items()] == [(0.509902, 2)]
    assert prof.degree == 2 and prof.d(1.0) == 2 and prof.d(0.5) == 0


def test_degree_profile_isolated_and_colocated():
    g = graph_of([(0, 0), (5, 5)])
    assert degree_profile(g, 0).items() == [] and degree_profile(g, 0).degree == 0
    g3 = build_graph(WeightedPointSet.from_points([(0, 0)], [3]))
    assert degree_profile(g3, 2).items() == [(0.0, 2)]


def test_degree_profile_bad_vertex(t3):
    with pytest.raises(IndexError):
        degree_profile(t3, 3)


@given(small_sets(12))
def test_degree_profile_invariants(pts):
    g = graph_of(pts)
    for v in range(g.n):
        prof = degree_profile(g, v)
        ds = [prof.d(r) for r in np.linspace(0, 1, 11)]
        assert ds == sorted(ds)
        assert prof.d(1.0) == prof.degree == g.degree(v) == prof.counts.sum()


def test_reuleaux_check_t3(t3):
    rep = check_reuleaux_inequality(t3, 3)
    assert rep.passed
    assert rep.worst == pytest.approx(2.980196, abs=1e-6)
    assert rep.witness == 1


def test_cor_radius_t3(t3):
    rep = check_cor_radius(t3, 3, 0.5)
    assert rep.passed and rep.worst == pytest.approx(2.0)


def test_checks_on_isolated_vertex():
    g = graph_of([(0, 0)])
    reports = structural_checks(g)
    assert all(r.passed for r in reports)
    assert check_reuleaux_inequality(g, 1).worst == 0.0


def test_average_degree_examples(t3):
    assert average_degree(t3) == 2.0
    assert average_degree(graph_of([(0, 0), (2, 0)])) == 0.0


@pytest.mark.parametrize("seed", range(6))
def test_structural_checks_random(seed):
    pts = np.vstack([uniform_box(300, 8, 8, seed), clustered(3, 15, 0.25, 8, seed)])
    g = graph_of(pts)
    failed = [str(r) for r in structural_checks(g) if not r.passed]
    assert failed == []


def test_structural_checks_wheel():
    g = graph_of(wheel(600, n_hub=3))
    reports = {r.name: r for r in structural_checks(g)}
    assert all(r.passed for r in reports.values())
    # hub degree is near the 6 omega ceiling
    assert reports["max-degree"].worst > 5.675 * clique_number(g)


def test_components_and_diameter():
    g = graph_of([(0, 0), (0.9, 0), (1.8, 0), (5, 5)])
    comps = connected_components(g)
    assert sorted(map(len, comps)) == [1, 3]
    assert hop_diameter(g, [0, 1, 2]) == 2


def test_t3_fixture_positions():
    assert graph_of(T3).positions.tolist() == [list(p) for p in T3]
