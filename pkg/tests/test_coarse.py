import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianlab.coarse import (CoarseMedianStructure, approximation_tree, coarse_median_point,
                              distortion_bound, min_sum_table, sweep_c2, verify_c1, verify_c2)
from medianlab.errors import InvalidInput
from medianlab.metric import (FiniteMetricSpace, box_product, complete_bipartite, cycle_graph,
                              estimate_delta, is_median_graph, path_graph, petersen_graph,
                              random_tree)
from medianlab.rng import make_rng


def test_min_sum_is_the_median_on_median_graphs():
    g = box_product(path_graph(3), path_graph(3))
    assert np.array_equal(min_sum_table(g.metric()), is_median_graph(g).algebra.mu)


def test_ties_go_to_the_smallest_index():
    c6 = cycle_graph(6).metric()
    assert coarse_median_point(c6, 0, 2, 4) == 0
    assert min_sum_table(c6)[0, 2, 4] == 0


def test_tree_c1_constants():
    t = random_tree(9, make_rng(5))
    cms = CoarseMedianStructure.build(t.metric(), "tree")
    rep = verify_c1(cms)
    assert rep.k == 1 and rep.h0 == 0 and rep.additive_at_unit_k == 0
    assert cms.report()["k"] == 1


def test_moving_one_argument_moves_the_tree_median_by_at_most_one():
    t = random_tree(10, make_rng(1))
    d = t.distances
    mu = min_sum_table(t.metric())
    for a, b, c in itertools.product(range(10), repeat=3):
        for a2 in t.neighbors[a]:
            assert d[mu[a, b, c], mu[a2, b, c]] <= 1


def test_sampled_c1_on_a_hyperbolic_graph():
    cms = CoarseMedianStructure.build(petersen_graph().metric(), "petersen")
    rep = verify_c1(cms, "sampled", samples=100_000, seed=0)
    assert rep.mode == "sampled" and rep.checked == 100_000
    assert cms.k == rep.k and cms.h0 == cms.delta
    assert any(w["check"] == "C1" for w in cms.witnesses)
    with pytest.raises(InvalidInput):
        verify_c1(cms, "bogus")


def test_small_trees_are_exact():
    c9 = cycle_graph(9).metric()
    for A in ([0, 4], [2, 7]):
        tr = approximation_tree(c9, A)
        assert tr.distortion == 0 and sum(e[2] for e in tr.edges()) == c9.dist[A[0], A[1]]
    for A in itertools.combinations(range(9), 3):
        assert approximation_tree(c9, A).distortion == 0
    with pytest.raises(InvalidInput):
        approximation_tree(c9, [])
    with pytest.raises(InvalidInput):
        approximation_tree(c9, [1, 2], basepoint=3)


@pytest.mark.parametrize("g", [cycle_graph(12), petersen_graph(), complete_bipartite(3, 4)],
                         ids=["c12", "petersen", "k34"])
def test_distortion_within_bound(g):
    space = g.metric()
    delta = estimate_delta(space).delta
    rng = make_rng(0)
    for p in range(2, 9):
        for _ in range(30):
            A = rng.choice(space.n, min(p, space.n), replace=False)
            assert approximation_tree(space, A).distortion <= distortion_bound(delta, p)


def test_distortion_bound_values():
    assert distortion_bound(1, 1) == 4
    assert distortion_bound(1, 2) == 8
    assert distortion_bound(0.5, 8) == 8
    assert distortion_bound(0.5, 5) == 8


def test_c2_is_zero_on_trees():
    t = random_tree(11, make_rng(3))
    cms = CoarseMedianStructure.build(t.metric(), "t")
    for A in itertools.combinations(range(11), 4):
        assert verify_c2(cms, A).h == 0
    assert cms.report()["h_table"] == {"4": 0.0}


def test_c2_small_subsets_are_bounded_by_delta():
    for g in (cycle_graph(7), petersen_graph()):
        cms = CoarseMedianStructure.build(g.metric())
        for A in itertools.combinations(range(g.n), 2):
            assert verify_c2(cms, A).h <= cms.delta


def test_c2_records_h_on_a_hyperbolic_sample():
    cms = CoarseMedianStructure.build(cycle_graph(9).metric(), "c9")
    rng = make_rng(2)
    for _ in range(20):
        verify_c2(cms, rng.choice(9, 5, replace=False))
    rep = cms.report()
    assert "5" in rep["h_table"] and rep["h_table"]["5"] >= 0
    assert set(rep) == {"space", "delta", "k", "h0", "h_table", "witnesses"}


def test_h_table_is_monotone_and_merges():
    cms = CoarseMedianStructure.build(cycle_graph(5).metric(), "c5")
    cms.record_h(3, 2.0)
    cms.record_h(5, 1.0)
    cms.record_h(2, 3.0)
    assert cms.h_table == {2: 3.0, 3: 3.0, 5: 3.0}
    other = CoarseMedianStructure.build(cycle_graph(5).metric(), "c5")
    other.merge_report(cms.report())
    assert other.h_table == cms.h_table
    with pytest.raises(InvalidInput):
        CoarseMedianStructure.build(cycle_graph(5).metric(), "x").merge_report(cms.report())


@pytest.mark.parametrize("g", [cycle_graph(7), petersen_graph(), complete_bipartite(2, 3),
                               box_product(path_graph(2), path_graph(4))],
                         ids=["c7", "petersen", "k23", "ladder"])
def test_sweep_matches_per_subset_checks(g):
    cms = CoarseMedianStructure.build(g.metric())
    sw = sweep_c2(cms, 5, record=False)
    expect = {p: 0.0 for p in range(1, 6)}
    count = 0
    for p in range(1, 6):
        for A in itertools.combinations(range(g.n), p):
            rep = verify_c2(cms, A, record=False)
            expect[p] = max(expect[p], rep.h)
            count += 1
    assert sw.checked == count
    assert sw.h_by_p == pytest.approx(expect)


def test_sweep_on_a_float_metric():
    rng = make_rng(4)
    pts = rng.random((8, 2))
    d = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
    space = FiniteMetricSpace(d)
    cms = CoarseMedianStructure.build(space)
    sw = sweep_c2(cms, 4, record=False)
    for p in range(1, 5):
        best = max(verify_c2(cms, A, record=False).h for A in itertools.combinations(range(8), p))
        assert sw.h_by_p[p] == pytest.approx(best)


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10 ** 6))
def test_sweep_on_random_trees_is_zero(n, seed):
    cms = CoarseMedianStructure.build(random_tree(n, make_rng(seed)).metric())
    sw = sweep_c2(cms, 5)
    assert max(sw.h_by_p.values()) == 0
