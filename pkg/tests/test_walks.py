import itertools
import math

import numpy as np
import pytest

from medianlab.errors import InvalidInput
from medianlab.induction import cyclic_group, dihedral_group, symmetric_group, word_metric
from medianlab.metric import (Graph, complete_graph, cycle_graph, hypercube_graph, path_graph,
                              petersen_graph)
from medianlab.walks import (FiniteGroupWalk, FreeGroupWalk, GraphWalk, GroupGraphAction,
                             IntegerWalk, WalkConfig, cayley_graph, chain_period,
                             discretized_walk, estimate_drift, exact_slope,
                             free_group_exact_means, free_group_generator,
                             increment_homogeneity, integer_walk_abs_mean, kac_check,
                             left_multiplication, line_shift, orbit_classes,
                             permutation_translation, quasi_action_check, quotient_chain,
                             simple_walk, simple_walks, stationary, translation_length)


def test_config_validation():
    with pytest.raises(InvalidInput):
        WalkConfig(path_graph(3), p0=5)
    with pytest.raises(InvalidInput):
        WalkConfig(Graph(2, ()))
    with pytest.raises(InvalidInput):
        WalkConfig(path_graph(3), steps=0)


def test_same_seed_same_trace():
    cfg = WalkConfig(petersen_graph(), 0, 500, 3, seed=11)
    assert np.array_equal(simple_walks(cfg), simple_walks(cfg))
    assert not np.array_equal(simple_walk(cfg, 0), simple_walk(cfg, 1))
    # trial t of seed s is the stream of seed s + t
    assert np.array_equal(simple_walk(cfg, 1), simple_walk(WalkConfig(petersen_graph(), 0, 500, 1, 12), 0))


def test_k2_alternates():
    tr = simple_walk(WalkConfig(path_graph(2), 0, 20))
    assert tr.tolist() == [t % 2 for t in range(21)]


def test_steps_follow_edges_and_q3_occupation_is_uniform():
    g = hypercube_graph(3)
    tr = simple_walk(WalkConfig(g, 0, 100_000, seed=0))
    adj = g.adjacency()
    assert adj[tr[:-1], tr[1:]].all()
    occ = np.bincount(tr[1:], minlength=8) / 100_000
    assert 0.5 * np.abs(occ - 1 / 8).sum() <= 0.02


def test_discretization_on_a_simply_transitive_action():
    G = cyclic_group(5)
    action = left_multiplication(G, range(5), [1])
    cfg = WalkConfig(action.graph, 0, 50, seed=3)
    dw = discretized_walk(action, 0, cfg)
    # h = e, so gamma_k . p0 = q_k and gamma_k is the walk itself on the Cayley graph
    path = [0] + list(dw.lattice_steps)
    assert all((b - a) % 5 in (1, 4) for a, b in zip(path, path[1:]))
    assert [action.act[g, 0] for g in dw.lattice_steps] == dw.lattice_steps
    assert len(dw.lattice_steps) == 50 and not dw.incomplete


def test_returns_land_in_the_orbit():
    G = cyclic_group(6)
    action = left_multiplication(G, [0, 2, 4], [1])
    cfg = WalkConfig(action.graph, 0, 300, seed=1)
    for trial in range(5):
        dw = discretized_walk(action, 0, cfg, trial)
        where = action.orbit_map(0)
        for gam in dw.lattice_steps:
            assert gam in where.values()
        strict = discretized_walk(action, 0, cfg, trial, strict=True)
        assert set(strict.times) <= set(dw.times)


def test_increment_homogeneity():
    G = cyclic_group(6)
    action = left_multiplication(G, [0, 2, 4], [1])
    test = increment_homogeneity(action, 0, WalkConfig(action.graph, 0, 200, 200, seed=0))
    assert test.passed and test.pvalue >= 0.01


def test_action_validation():
    G = cyclic_group(4)
    with pytest.raises(InvalidInput):
        GroupGraphAction(cycle_graph(4), G, np.array([[0, 1, 2, 3], [1, 0, 2, 3],
                                                       [0, 1, 2, 3], [0, 1, 2, 3]]), (0,))
    action = left_multiplication(G, [0, 2], [1])
    assert action.orbit_map(0) == {0: 0, 2: 2}
    g = cayley_graph(G, [1])
    assert g.edges == cycle_graph(4).edges


def test_quotient_chain_and_period():
    g = cycle_graph(6)
    rot2 = [(i + 2) % 6 for i in range(6)]
    cls = orbit_classes(6, [rot2])
    assert cls.tolist() == [0, 1, 0, 1, 0, 1]
    P, _ = quotient_chain(g, [rot2])
    assert np.allclose(P, [[0, 1], [1, 0]])
    assert chain_period(P) == 2
    Pp, _ = quotient_chain(petersen_graph(), [list(range(10))])
    assert chain_period(Pp) == 1
    assert np.allclose(stationary(Pp), 0.1)


def test_kac_on_a_single_class_is_exact():
    G = cyclic_group(6)
    g = cayley_graph(G, [1])
    perms = [G.mul[s].tolist() for s in range(6)]
    rep = kac_check(g, perms, 0, WalkConfig(g, 0, 1000, seed=0))
    assert rep.classes == 1 and rep.predicted == 1 and rep.empirical == 1


def test_kac_on_a_regular_graph():
    g = hypercube_graph(3)
    rep = kac_check(g, [], 0, WalkConfig(g, 0, 100_000, seed=0))
    assert rep.predicted == pytest.approx(8)
    assert rep.relative_error <= 0.05


def test_free_group_oracle_matches_enumeration():
    exact = free_group_exact_means(6)
    for n in range(7):
        total = 0
        for word in itertools.product(range(4), repeat=n):
            stack = []
            for s in word:
                if stack and stack[-1] == s ^ 1:
                    stack.pop()
                else:
                    stack.append(s)
            total += len(stack)
        assert exact[n] == pytest.approx(total / 4 ** n)
    assert exact_slope(free_group_exact_means(10_000)) == pytest.approx(0.5, abs=0.01)


def test_integer_oracle_matches_enumeration():
    for n in range(1, 11):
        brute = sum(abs(sum(s)) for s in itertools.product([-1, 1], repeat=n)) / 2 ** n
        assert integer_walk_abs_mean(n) == pytest.approx(brute)


def test_free_group_drift():
    est = estimate_drift(FreeGroupWalk(2), WalkConfig(None, 0, 10_000, 200, seed=0))
    assert 0.48 <= est.slope <= 0.52
    assert est.ci_halfwidth < 0.01
    rows = est.csv_rows(1000)
    assert rows[0][0] == 1 and len(rows[0]) == 4


def test_fixed_point_gives_zero_drift():
    G = dihedral_group(4)
    act = np.zeros((G.order, 1), dtype=np.int64)
    src = FiniteGroupWalk(G, [1, 4], act, np.zeros((1, 1)))
    est = estimate_drift(src, WalkConfig(None, 0, 500, 20, seed=0))
    assert est.slope == 0 and np.all(est.mean_distance == 0)


def test_bounded_and_recurrent_walks_have_small_slopes():
    S3 = symmetric_group(3)
    act = np.array(S3.permutations)
    src = FiniteGroupWalk(S3, [1, 2], act, complete_graph(3).distances)
    assert estimate_drift(src, WalkConfig(None, 0, 10_000, 50, seed=1)).slope <= 0.02
    z = estimate_drift(IntegerWalk(), WalkConfig(None, 0, 10_000, 500, seed=1))
    assert z.slope < 0.05


def test_graph_walk_distances():
    g = cycle_graph(8)
    d = GraphWalk(g).distances(WalkConfig(g, 0, 100, 2, seed=0), [0, 1])
    assert d.shape == (2, 101) and d[:, 0].tolist() == [0, 0] and d.max() <= 4


def test_translation_examples():
    step, dist = line_shift(1000)
    est = translation_length(step, 0, 100, dist)
    assert est.estimate == 1 and est.loxodromic and est.window == (50, 100)
    step, dist = free_group_generator(200)
    assert translation_length(step, (), 100, dist).estimate == 1
    d = cycle_graph(6).distances
    for perm in dihedral_group(6).permutations:
        est = permutation_translation(perm, d, 0)
        assert est.estimate == 0 and not est.loxodromic
    with pytest.raises(InvalidInput):
        translation_length(line_shift(10)[0], 0, 20, line_shift(10)[1])


def test_quasi_action_examples():
    n = 12
    Z = cyclic_group(n)
    maps = np.array([[(g + x) % n for x in range(n)] for g in range(n)])
    dist = cycle_graph(n).distances
    rep = quasi_action_check(maps, dist, word_metric(Z, [1]), Z.mul)
    assert (rep.K, rep.C) == (1.0, 0.0) and not rep.growth
    bad = np.array([[(x + g * g) % n for x in range(n)] for g in range(n)])
    rep = quasi_action_check(bad, dist, word_metric(Z, [1]), Z.mul)
    assert rep.axiom_defects["axiom3"] > 0 and rep.witnesses["axiom3"] is not None
    g, h, x = (rep.witnesses["axiom3"][k] for k in ("g", "h", "x"))
    assert dist[bad[g, bad[h, x]], bad[Z.mul[g, h], x]] == rep.axiom_defects["axiom3"]
    with pytest.raises(InvalidInput):
        quasi_action_check(np.zeros((0, 0), dtype=int), dist, dist, Z.mul)


def test_conjugated_action_has_finite_constants():
    pts = 41
    shifts = list(range(-5, 6))
    maps = np.array([[min(pts - 1, max(0, (2 * x + (x % 2) + 2 * s) // 2)) for x in range(pts)]
                     for s in shifts])
    dist = np.abs(np.subtract.outer(np.arange(pts), np.arange(pts)))
    mul = np.array([[min(10, max(0, a + b + 5)) for b in shifts] for a in shifts])
    wd = np.abs(np.subtract.outer(np.array(shifts), np.array(shifts)))
    rep = quasi_action_check(maps, dist, wd, mul)
    assert math.isfinite(rep.K) and math.isfinite(rep.C) and rep.K >= 1
