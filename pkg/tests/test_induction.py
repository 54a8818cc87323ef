import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianlab.errors import BudgetExceeded, InvalidInput
from medianlab.induction import (FiniteGroup, apply_induced_action, build_transversal,
                                 check_cocycle_identity, cyclic_group, dihedral_group,
                                 direct_product, generated_subgroup, group_from_permutations,
                                 induce_space, is_subgroup, make_action, symmetric_group,
                                 verify_induced_action, word_metric)
from medianlab.metric import FiniteMetricSpace, complete_graph, cycle_graph, path_graph


def s3_a3():
    S3 = symmetric_group(3)
    A3 = [g for g, p in enumerate(S3.permutations)
          if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0]
    rot = next(g for g in A3 if g)
    K3 = complete_graph(3).metric()
    fga = make_action(S3, A3, K3, {g: S3.permutations[g] for g in A3}, 0, S=[rot])
    return S3, A3, fga


def test_group_validation():
    with pytest.raises(InvalidInput):
        FiniteGroup(np.array([[0, 1], [0, 1]]))
    with pytest.raises(InvalidInput):
        FiniteGroup(np.array([[1, 0], [0, 1]]))
    G = dihedral_group(5)
    assert G.order == 10 and all(G.mul[g, G.inv[g]] == 0 for g in range(10))
    assert G.element_order(1) == 5 and G.element_order(5) == 2
    assert symmetric_group(4).order == 24
    assert direct_product(cyclic_group(2), cyclic_group(3)).order == 6


def test_subgroups():
    Z6 = cyclic_group(6)
    assert is_subgroup(Z6, [0, 2, 4])[0]
    assert not is_subgroup(Z6, [0, 1])[0]
    assert generated_subgroup(Z6, [2]) == (0, 2, 4)
    d = word_metric(Z6, [1])
    assert d[0, 3] == 3 and d[1, 5] == 2


def test_z6_transversal_example():
    tr = build_transversal(cyclic_group(6), [0, 2, 4])
    assert tr.U == (0, 1)
    assert tr.P[5] == 1 and tr.chi[5] == 4
    assert tr.P[0] == 0 and tr.chi[0] == 0


def test_whole_group_transversal():
    G = dihedral_group(4)
    tr = build_transversal(G, range(G.order))
    assert tr.U == (0,) and np.array_equal(tr.chi, np.arange(G.order))
    with pytest.raises(InvalidInput):
        build_transversal(G, [0, 1])


@pytest.mark.parametrize("G,lat", [
    (cyclic_group(6), [0, 2, 4]), (dihedral_group(6), range(6)), (symmetric_group(4), [0]),
    (direct_product(symmetric_group(4), cyclic_group(2)), [0, 1]),
], ids=["z6", "d6", "s4-trivial", "s4xz2"])
def test_cocycle_identity_exhaustive_and_sampled(G, lat):
    tr = build_transversal(G, lat)
    assert tr.P[0] == 0 and tr.chi[0] == 0
    for g in range(G.order):
        assert G.mul[tr.P[g], tr.chi[g]] == g
    assert check_cocycle_identity(G, tr).ok
    assert check_cocycle_identity(G, tr, samples=1, seed=7).ok


def test_broken_transversal_is_caught():
    G = cyclic_group(6)
    tr = build_transversal(G, [0, 2, 4])
    P = tr.P.copy()
    P[3] = 0                               # wrong coset representative
    chi = G.mul[G.inv[P], np.arange(6)]
    bad = type(tr)(tr.U, P, chi, tr.slot)
    assert not check_cocycle_identity(G, bad).ok


def test_s3_a3_induced_space_and_hand_distance():
    S3, A3, fga = s3_a3()
    ind = induce_space(fga)
    assert ind.size == 9 and ind.mode == "exhaustive"
    # functions U -> X with U = {e, (01)}: d_Y((0,0), (1,2)) = (1 + 1) / 2
    assert ind.distance([0, 0], [1, 2]) == 1.0
    assert ind.distance([0, 0], [0, 1]) == 0.5
    rep = verify_induced_action(fga, ind)
    assert rep.ok, rep.failures()
    assert rep.checks["c1_inherited"]["mode"] == "exhaustive"


def test_identity_and_trivial_cases():
    S3, A3, fga = s3_a3()
    ind = induce_space(fga)
    assert np.array_equal(apply_induced_action(fga, 0, ind.funcs), ind.funcs)
    point = FiniteMetricSpace(np.zeros((1, 1)))
    fga1 = make_action(S3, A3, point, {}, 0)
    ind1 = induce_space(fga1)
    assert ind1.size == 1 and ind1.distance(ind1.funcs[0], ind1.funcs[0]) == 0


def test_whole_group_reduces_to_the_base_action():
    D4 = dihedral_group(4)
    C4 = cycle_graph(4).metric()
    fga = make_action(D4, range(8), C4, {g: D4.permutations[g] for g in range(8)}, 0, S=[1, 4])
    ind = induce_space(fga)
    assert ind.width == 1 and ind.size == 4
    for g in range(8):
        assert np.array_equal(apply_induced_action(fga, g, ind.funcs)[:, 0],
                              np.asarray(D4.permutations[g]))
    for a, b in itertools.product(range(4), repeat=2):
        assert ind.distance([a], [b]) == C4.dist[a, b]
    rep = verify_induced_action(fga, ind)
    alpha = max(C4.dist[D4.permutations[b][0], 0] for b in fga.B)
    assert rep.ok and rep.checks["orbit_lipschitz"]["alpha"] == alpha


def test_median_graph_automorphisms_have_zero_defect():
    D4 = dihedral_group(4)
    fga = make_action(D4, range(4), cycle_graph(4).metric(), {1: D4.permutations[1]}, 0,
                      S=[1], B=[1, 4])
    rep = verify_induced_action(fga, induce_space(fga))
    md = rep.checks["median_defect"]
    assert rep.ok and md["C_X"] == 0 and md["C_Y"] == 0 and md["mode"] == "exhaustive"


def test_integrability_values():
    Z4 = cyclic_group(4)
    fga = make_action(Z4, [0, 2], path_graph(3).metric(), {2: [2, 1, 0]}, 0, S=[2], B=[1])
    ind = induce_space(fga)
    assert ind.integrability == {1: 0.5}
    assert verify_induced_action(fga, ind).ok


def test_action_validation():
    Z4 = cyclic_group(4)
    P3 = path_graph(3).metric()
    with pytest.raises(InvalidInput):
        make_action(Z4, [0, 1], P3, {}, 0)                      # not a subgroup
    with pytest.raises(InvalidInput):
        make_action(Z4, [0, 2], P3, {2: [1, 0, 2]}, 0)          # not an isometry
    with pytest.raises(InvalidInput):
        make_action(Z4, range(4), cycle_graph(4).metric(), {1: [1, 2, 3, 0], 2: [0, 1, 2, 3]}, 0)
    with pytest.raises(InvalidInput):
        make_action(Z4, [0, 2], P3, {1: [2, 1, 0]}, 0)          # element outside the lattice


def test_budget_and_lazy_sampling():
    D6 = dihedral_group(6)
    fga = make_action(symmetric_group(4), [0], cycle_graph(6).metric(), {}, 0)
    with pytest.raises(BudgetExceeded):
        induce_space(fga, cap=1000)
    ind = induce_space(fga, cap=1000, lazy=True, samples=500, seed=1)
    assert ind.mode == "sampled" and ind.size == 500
    assert D6.order == 12


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)), st.data())
def test_cocycle_identity_on_random_groups(p, q, data):
    G = group_from_permutations([list(p), list(q)])
    g = data.draw(st.integers(0, G.order - 1))
    lat = generated_subgroup(G, [g])
    tr = build_transversal(G, lat)
    assert len(tr.U) * len(lat) == G.order
    assert check_cocycle_identity(G, tr).ok
