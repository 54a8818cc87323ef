import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianlab.errors import BudgetExceeded, DisconnectedGraph, InvalidInput
from medianlab.median_core import boolean_cube, verify_median_axioms
from medianlab.metric import (FiniteMetricSpace, Graph, box_product, check_metric_median,
                              complete_bipartite, cycle_graph, estimate_delta, grid_graph,
                              hypercube_graph, is_median_graph, l1_product, metric_interval,
                              path_graph, petersen_graph, random_tree)
from medianlab.rng import make_rng


def hamming_cube(n):
    pts = list(itertools.product([0, 1], repeat=n))
    d = np.array([[sum(a != b for a, b in zip(p, q)) for q in pts] for p in pts])
    return FiniteMetricSpace(d, ["".join(map(str, p)) for p in pts])


def brute_delta(d):
    n = len(d)
    best = 0.0
    for x, y, z, w in itertools.product(range(n), repeat=4):
        s = sorted([d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]])
        best = max(best, (s[2] - s[1]) / 2)
    return best


def test_metric_validation():
    with pytest.raises(InvalidInput):
        FiniteMetricSpace(np.array([[0, 1], [2, 0]]))
    with pytest.raises(InvalidInput):
        FiniteMetricSpace(np.array([[0, 5, 1], [5, 0, 1], [1, 1, 0]]))
    with pytest.raises(InvalidInput):
        FiniteMetricSpace(np.array([[0, 0], [0, 0]]))


def test_intervals():
    q3 = hamming_cube(3)
    assert {q3.label(i) for i in metric_interval(q3, "000", "110")} == {"000", "100", "010", "110"}
    assert metric_interval(q3, "101", "101") == {q3.index("101")}
    c6 = cycle_graph(6).metric()
    assert metric_interval(c6, 0, 3) == frozenset(range(6))


def test_median_examples():
    res = check_metric_median(hamming_cube(3))
    assert res.ok
    alg = res.algebra
    for a, b, c in itertools.product(range(8), repeat=3):
        maj = "".join(max("01", key=[x[i] for x in (alg.elements[a], alg.elements[b],
                                                      alg.elements[c])].count) for i in range(3))
        assert alg.elements[alg.mu[a, b, c]] == maj
    res = check_metric_median(cycle_graph(6).metric())
    assert not res.ok
    a, b, c, meet = res.witness
    assert (a, b, c) == (0, 2, 4) and meet == frozenset()


def test_median_graph_examples():
    assert is_median_graph(hypercube_graph(4)).ok
    res = is_median_graph(complete_bipartite(2, 3))
    assert not res.ok and len(res.witness[3]) == 2
    assert not is_median_graph(cycle_graph(6)).ok
    assert is_median_graph(box_product(path_graph(3), path_graph(4))).ok
    with pytest.raises(DisconnectedGraph):
        is_median_graph(Graph(2, ()))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10 ** 6))
def test_trees_are_median_and_zero_hyperbolic(n, seed):
    t = random_tree(n, make_rng(seed))
    res = is_median_graph(t)
    assert res.ok and verify_median_axioms(res.algebra).ok
    assert estimate_delta(t.metric()).delta == 0


def test_l1_product_of_paths_is_median():
    p3 = path_graph(3).metric()
    prod = l1_product(p3, p3)
    assert np.array_equal(prod.dist, box_product(path_graph(3), path_graph(3)).distances)
    assert check_metric_median(prod).ok
    with pytest.raises(BudgetExceeded):
        l1_product(p3, p3, budget=4)


@pytest.mark.parametrize("g", [cycle_graph(6), petersen_graph(), grid_graph(3, 3), cycle_graph(7)],
                         ids=["c6", "petersen", "grid3", "c7"])
def test_delta_matches_brute_force(g):
    d = g.distances
    est = estimate_delta(g.metric())
    assert est.exact and est.delta == brute_delta(d.tolist())


def test_delta_of_c6_and_grid():
    assert estimate_delta(cycle_graph(6).metric()).delta == 1.0
    est = estimate_delta(grid_graph(5, 5).metric())
    assert est.exact and est.delta > 0


def test_sampled_delta_is_a_lower_bound():
    g = grid_graph(9, 9)
    exact = estimate_delta(g.metric(), exhaustive_limit=100).delta
    est = estimate_delta(g.metric(), exhaustive_limit=10, samples=20000, seed=1)
    assert not est.exact and est.kind == "lower bound" and est.delta <= exact


def test_float_metric_medians_use_tolerance():
    d = np.array([[0, 0.1, 0.3], [0.1, 0, 0.2], [0.3, 0.2, 0]]) * 3
    assert check_metric_median(FiniteMetricSpace(d)).ok
