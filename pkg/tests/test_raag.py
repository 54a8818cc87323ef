import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianlab.errors import BudgetExceeded, InvalidInput
from medianlab.metric import Graph, complete_graph, cycle_graph, path_graph
from medianlab.raag import (check_admissible, compute_dsl, max_clique, order_from_pairs,
                            prec_max, random_graph, restrict, star_link)


def test_star_link_examples():
    assert star_link(path_graph(3), 1) == (frozenset({0, 1, 2}), frozenset({0, 2}))
    assert star_link(path_graph(3), 0) == (frozenset({0, 1}), frozenset({1}))
    assert star_link(Graph(2, ()), 0) == (frozenset({0}), frozenset())
    assert star_link(complete_graph(4), 2) == (frozenset(range(4)), frozenset({0, 1, 3}))
    labelled = Graph(2, ((0, 1),), ("a", "b"))
    assert star_link(labelled, "b")[1] == frozenset({0})
    with pytest.raises(InvalidInput):
        star_link(path_graph(3), 7)


def test_prec_max_on_a_path():
    o = prec_max(path_graph(3))
    assert o.relation[0, 1] and not o.relation[1, 0]
    assert o.relation[0, 2] and o.relation[2, 0]              # both leaves have link {1}
    assert o.classes == [[0, 2], [1]]


@pytest.mark.parametrize("X", [complete_graph(5), Graph(4, ())])
def test_prec_max_single_class(X):
    assert prec_max(X).classes == [list(range(X.n))]


def test_dsl_examples():
    for d in range(1, 6):
        assert compute_dsl(complete_graph(d), "prec").dsl == d
        assert compute_dsl(complete_graph(d), "same-star").dsl == d
    assert compute_dsl(path_graph(3), "prec").dsl == 1
    assert compute_dsl(cycle_graph(4), "prec").dsl == 1
    assert compute_dsl(Graph(3, ()), "prec").dsl == 1
    assert compute_dsl(Graph(0, ()), "prec").dsl == 0
    with pytest.raises(InvalidInput):
        compute_dsl(path_graph(3), "bogus")


def test_dsl_report():
    r = compute_dsl(Graph(3, ((0, 1), (1, 2), (0, 2)), ("x", "y", "z")), "prec")
    assert r.as_dict(Graph(3, ((0, 1), (1, 2), (0, 2)), ("x", "y", "z")), "k3") == {
        "graph": "k3", "mode": "prec", "dsl": 3, "witness_clique": ["x", "y", "z"]}


def test_max_clique_matches_networkx():
    rng = np.random.default_rng(5)
    for _ in range(60):
        n = int(rng.integers(1, 16))
        X = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        adj = [0] * n
        for i, j in X.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        clique = max_clique(adj)
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(X.edges)
        size = max(len(c) for c in nx.find_cliques(G))
        assert len(clique) == size
        assert all(adj[a] >> b & 1 for a in clique for b in clique if a != b)


def test_order_from_pairs():
    X = path_graph(3)
    o = order_from_pairs(X, [(0, 1), (0, 2), (2, 0)])
    assert o.equivalent(0, 2) and not o.equivalent(0, 1)
    assert compute_dsl(X, "prec", o).dsl == 1
    with pytest.raises(InvalidInput, match="not admissible"):
        order_from_pairs(X, [(1, 0)])                       # lk(1) = {0, 2} is not in st(0)


def test_check_admissible_reports_a_pair():
    assert check_admissible(path_graph(3), np.ones((3, 3), dtype=bool)) == (1, 0)
    with pytest.raises(InvalidInput):
        check_admissible(path_graph(3), np.ones((2, 2), dtype=bool))


def test_budget_carries_partial():
    X = complete_graph(12)
    with pytest.raises(BudgetExceeded) as e:
        compute_dsl(X, "prec", budget=3)
    assert isinstance(e.value.partial, list)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.floats(0.1, 0.9), st.integers(0, 2 ** 32 - 1))
def test_restriction_is_admissible_and_monotone(n, p, seed):
    rng = np.random.default_rng(seed)
    X = random_graph(n, p, rng)
    order = prec_max(X)
    full = compute_dsl(X, "prec", order).dsl
    keep = sorted(np.flatnonzero(rng.random(n) < 0.6).tolist())
    sub = X.induced(keep)
    o = restrict(order, keep)
    assert check_admissible(sub, o.relation) is None
    assert compute_dsl(sub, "prec", o).dsl <= full
    assert compute_dsl(X, "same-star").dsl <= full
