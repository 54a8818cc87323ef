"""The acceptance checks behind ``medianlab check-all``.

Each ``criterion_*`` function takes the loaded corpus and a seed and returns
``{"id", "name", "ok", "details"}``.  Reports carry no timings or paths, so
two runs with the same seed give the same bytes.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import io
from .coarse import (CoarseMedianStructure, approximation_tree, distortion_bound, sweep_c2,
                     verify_c1)
from .corpus import all_trees, graph_algebra, load_corpus
from .induction import (build_transversal, check_cocycle_identity, induce_space, make_action,
                        verify_induced_action)
from .median_core import (_interval_masks, all_walls, boolean_cube, check_wall,
                          free_median_algebra, verify_median_axioms)
from .metric import estimate_delta, is_median_graph
from .raag import check_admissible, compute_dsl, prec_max, random_graph, restrict
from .rng import make_rng
from .walks import (FiniteGroupWalk, FreeGroupWalk, IntegerWalk, WalkConfig, estimate_drift,
                    exact_slope, free_group_exact_means, free_group_generator,
                    integer_walk_abs_mean, kac_check, line_shift, permutation_translation,
                    quasi_action_check, translation_length)

TOL = 1e-9


def _result(cid: int, name: str, ok: bool, details: dict) -> dict:
    return {"id": cid, "name": name, "ok": bool(ok), "details": details}


def majority_closure_size(n: int) -> int:
    """Size of the majority closure of the n coordinate projections of {0,1}^n.

    Plain fixed-point iteration over all triples of boolean rows; shares no
    code with ``free_median_algebra``.
    """
    cols = np.array(list(itertools.product([0, 1], repeat=n)), dtype=bool)
    found = {tuple(cols[:, i]) for i in range(n)}
    while True:
        V = np.array(sorted(found), dtype=bool)
        a, b, c = V[:, None, None], V[None, :, None], V[None, None, :]
        maj = (a & b) | (a & c) | (b & c)
        new = {tuple(r) for r in maj.reshape(-1, V.shape[1])}
        if new <= found:
            return len(found)
        found |= new


def _trees(corpus) -> list:
    return [io.graph_from_json(t) for t in corpus["trees"]["trees"]["trees"]]


# 1
def criterion_axioms(corpus, seed: int = 0) -> dict:
    fails = []
    counts = {"cubes": 0, "trees": 0, "free": 0}
    for n in range(5):
        rep = verify_median_axioms(boolean_cube(n))
        counts["cubes"] += 1
        if not rep.ok:
            fails.append({"algebra": f"cube{n}", **rep.as_dict()})
    for i, t in enumerate(_trees(corpus)):
        rep = verify_median_axioms(graph_algebra(t))
        counts["trees"] += 1
        if not rep.ok:
            fails.append({"algebra": f"tree{i}", **rep.as_dict()})
    for n in range(1, 4):
        rep = verify_median_axioms(free_median_algebra(n).algebra)
        counts["free"] += 1
        if not rep.ok:
            fails.append({"algebra": f"free{n}", **rep.as_dict()})
    return _result(1, "median-axioms", not fails, {"checked": counts, "failures": fails})


# 2
def criterion_free_oracle(corpus, seed: int = 0) -> dict:
    rows = []
    ok = True
    for n in range(1, 5):
        got = free_median_algebra(n).algebra.size
        oracle = majority_closure_size(n)
        expect = {1: 1, 2: 2, 3: 4}.get(n, oracle)
        good = got == oracle == expect
        ok &= good
        rows.append({"n": n, "size": got, "oracle": oracle, "ok": good})
    return _result(2, "free-algebra-oracle", ok, {"sizes": rows})


# 3
def criterion_walls(corpus, seed: int = 0) -> dict:
    per = {}
    fails = []
    for name, d in corpus["algebras"].items():
        alg = io.algebra_from_json(d)
        if alg.size > 64:
            continue
        masks = _interval_masks(alg)
        walls = all_walls(alg)
        bad = 0
        for (x, y), w in walls.items():
            v = check_wall(alg, w, x, y, masks)
            if not v.ok:
                bad += 1
                if len(fails) < 10:
                    fails.append({"algebra": name, "pair": [x, y], "why": str(v.witness)})
        per[name] = {"elements": alg.size, "pairs": len(walls), "failures": bad}
    ok = not fails and bool(per)
    return _result(3, "walls", ok, {"algebras": per, "failures": fails})


# 4
def criterion_median_graphs(corpus, seed: int = 0) -> dict:
    cases = {}
    ok = True
    for name, d in corpus["graphs"].items():
        res = is_median_graph(io.graph_from_json(d))
        good = res.ok == d["expect_median"] and (res.ok or res.witness is not None)
        ok &= good
        wit = None
        if res.witness is not None:
            a, b, c, meet = res.witness
            wit = {"triple": [a, b, c], "meet": sorted(meet)}
        cases[name] = {"median": res.ok, "expected": d["expect_median"], "witness": wit}
    tree_fail = [i for i, t in enumerate(_trees(corpus)) if not is_median_graph(t).ok]
    ok &= not tree_fail
    return _result(4, "median-graphs", ok, {"graphs": cases, "trees": len(_trees(corpus)),
                                            "tree_failures": tree_fail})


# 5
def _subsets(n: int, p: int, limit: int, rng) -> list:
    if math.comb(n, p) <= limit:
        return [list(c) for c in itertools.combinations(range(n), p)]
    out = set()
    while len(out) < limit:
        out.add(tuple(sorted(rng.choice(n, p, replace=False).tolist())))
    return [list(c) for c in sorted(out)]


def criterion_coarse(corpus, seed: int = 0, max_p: int = 6, samples: int = 300) -> dict:
    c1_bad, c2_bad = [], []
    subsets = 0
    for i, t in enumerate(_trees(corpus)):
        cms = CoarseMedianStructure.build(t.metric(), f"tree{i}")
        r1 = verify_c1(cms)
        # a single point has no pairs of triples at positive distance, so k is vacuous there
        if r1.h0 != 0 or r1.k > 1 + TOL or (t.n > 1 and abs(r1.k - 1) > TOL):
            c1_bad.append({"tree": i, "k": r1.k, "h0": r1.h0})
        sw = sweep_c2(cms, max_p, record=False)
        subsets += sw.checked
        if max(sw.h_by_p.values()) > 0:
            c2_bad.append({"tree": i, "h": sw.worst.h, "subset": list(sw.worst_subset)})

    rng = make_rng(seed)
    hyp = {}
    hyp_ok = True
    for name, d in corpus["hyperbolic"].items():
        space = io.graph_from_json(d).metric()
        delta = estimate_delta(space).delta
        worst = []
        for p in range(1, 9):
            gap = 0.0
            for A in _subsets(space.n, p, samples, rng):
                gap = max(gap, approximation_tree(space, A).distortion)
            bound = distortion_bound(delta, p)
            hyp_ok &= gap <= bound + TOL
            worst.append({"p": p, "distortion": gap, "bound": bound})
        hyp[name] = {"delta": delta, "by_p": worst}
    ok = not c1_bad and not c2_bad and hyp_ok
    return _result(5, "coarse-median", ok, {
        "trees": len(_trees(corpus)), "c1_failures": c1_bad, "c2_subsets": subsets,
        "c2_max_p": max_p, "c2_failures": c2_bad, "hyperbolic": hyp})


# 6
def build_instance(d: dict):
    """FiniteGroupAction from a corpus induction file."""
    G, extra = io.group_from_json(d["group"])
    space = io.graph_from_json(d["space"]).metric()
    act, x0 = io.action_from_json(d["action"])
    return make_action(G, extra["lattice"], space, act, x0, S=extra["gens_lattice"],
                       B=extra["gens_group"], name=d.get("id", "action"))


def criterion_induction(corpus, seed: int = 0) -> dict:
    out = {}
    exhaustive_ok = 0
    ok = True
    for name, d in corpus["induction"].items():
        if d.get("cocycle_only"):
            G, extra = io.group_from_json(d["group"])
            tr = build_transversal(G, extra["lattice"])
            v = check_cocycle_identity(G, tr)
            ok &= v.ok
            out[name] = {"group_order": G.order, "cosets": len(tr.U), "cocycle": v.ok}
            continue
        fga = build_instance(d)
        ind = induce_space(fga)
        rep = verify_induced_action(fga, ind, seed=seed)
        modes = {k: v.get("mode", "exhaustive") for k, v in rep.checks.items()}
        all_exh = ind.mode == "exhaustive" and all(m == "exhaustive" for m in modes.values())
        if d.get("exhaustive"):
            ok &= rep.ok and all_exh
            exhaustive_ok += int(rep.ok and all_exh)
        else:
            ok &= rep.ok
        out[name] = {"group_order": fga.group.order, "points": ind.size, "ok": rep.ok,
                     "exhaustive": all_exh, "failures": rep.failures(),
                     "C_X": rep.checks["median_defect"]["C_X"],
                     "C_Y": rep.checks["median_defect"]["C_Y"],
                     "k_x": rep.checks["c1_inherited"]["k_x"],
                     "k_y": rep.checks["c1_inherited"]["k_y"],
                     "alpha": rep.checks["orbit_lipschitz"]["alpha"]}
    s3 = out.get("s3_a3_triangle", {})
    ok &= bool(s3.get("ok")) and bool(s3.get("exhaustive")) and exhaustive_ok >= 3
    return _result(6, "induction", ok, {"instances": out, "exhaustive_passing": exhaustive_ok})


# 7, 8
def _drift_source(d: dict):
    kind = d["source"]
    if kind == "free-group":
        return FreeGroupWalk(d.get("rank", 2))
    if kind == "integer":
        return IntegerWalk()
    if kind == "finite-group":
        G, _ = io.group_from_json(d["group"])
        space = io.graph_from_json(d["space"]).metric()
        act = np.array([d["action"][str(g)] for g in range(G.order)])
        return FiniteGroupWalk(G, d["gens"], act, space.dist, d.get("x0", 0))
    raise io.InvalidInput(f"unknown walk source {kind!r}")


def run_drift(d: dict, seed: int = 0):
    cfg = WalkConfig(None, 0, d["steps"], d["trials"], seed)
    return estimate_drift(_drift_source(d), cfg)


def criterion_drift_positive(corpus, seed: int = 0) -> dict:
    d = corpus["walks"]["f2"]
    est = run_drift(d, seed)
    exact = exact_slope(free_group_exact_means(d["steps"], d.get("rank", 2)))
    ok = 0.48 <= est.slope <= 0.52 and abs(exact - 0.5) <= 0.02
    return _result(7, "drift-positive", ok, {
        "steps": d["steps"], "trials": d["trials"], "slope": est.slope,
        "ci_halfwidth": est.ci_halfwidth, "exact_slope": exact, "window": [0.48, 0.52]})


def criterion_drift_zero(corpus, seed: int = 0) -> dict:
    b = corpus["walks"]["bounded_s3"]
    est = run_drift(b, seed)
    z = corpus["walks"]["integer"]
    zi = run_drift(z, seed)
    n = z["steps"]
    empirical = float(zi.mean_distance[n] / n)
    exact = integer_walk_abs_mean(n) / n
    rel = abs(empirical - exact) / exact
    ok = est.slope <= 0.02 and rel <= 0.10
    return _result(8, "drift-zero", ok, {
        "bounded_slope": est.slope, "bounded_ci": est.ci_halfwidth,
        "integer_n": n, "integer_trials": z["trials"], "integer_empirical": empirical,
        "integer_exact": exact, "integer_relative_error": rel})


# 9
def run_kac(d: dict, seed: int = 0):
    g = io.graph_from_json(d["graph"])
    cfg = WalkConfig(g, d["p0"], d["steps"], d["trials"], seed)
    return kac_check(g, d["perms"], d["p0"], cfg)


def criterion_kac(corpus, seed: int = 0) -> dict:
    out = {}
    ok = True
    trivial = nontrivial = 0
    for name, d in corpus["walks"].items():
        if d.get("kind") != "kac":
            continue
        rep = run_kac(d, seed)
        target = d.get("expected", rep.predicted)
        rel = abs(rep.empirical - target) / target
        good = rel <= 0.05 and (d.get("expected") is None or abs(rep.predicted - target) < TOL)
        ok &= good
        if d["perms"]:
            nontrivial += 1
        else:
            trivial += 1
        out[name] = {**rep.as_dict(), "target": target, "ok": good}
    ok &= trivial >= 1 and nontrivial >= 1
    return _result(9, "kac", ok, {"instances": out})


# 10
def criterion_loxodromic(corpus, seed: int = 0) -> dict:
    out = {}
    ok = True
    for name, d in corpus["translation"].items():
        if d["kind"] == "line":
            step, dist = line_shift(d["N"])
            est = translation_length(step, 0, d["n_max"], dist)
            good = abs(est.estimate - d["expect"]) < TOL and est.loxodromic
            out[name] = {**est.as_dict(), "ok": good}
        elif d["kind"] == "free-group":
            step, dist = free_group_generator(d["depth"])
            est = translation_length(step, (), d["n_max"], dist)
            good = abs(est.estimate - d["expect"]) < TOL and est.loxodromic
            out[name] = {**est.as_dict(), "ok": good}
        else:
            dmat = io.graph_from_json(d["space"]).distances
            ests = [permutation_translation(p, dmat, d["x0"]) for p in d["perms"]]
            good = all(e.estimate == 0 and not e.loxodromic for e in ests)
            out[name] = {"elements": len(ests), "estimates": [e.estimate for e in ests],
                         "periods": [e.period for e in ests], "ok": good}
        ok &= good
    quasi = {}
    for name, d in corpus["quasi"].items():
        dist = io.graph_from_json(d["space"]).distances
        rep = quasi_action_check(np.array(d["maps"]), dist, np.array(d["word_dist"]),
                                 np.array(d["mul"]))
        entry = {"K": rep.K, "C": rep.C, "axiom_defects": rep.axiom_defects,
                 "unbounded_growth": rep.growth}
        if "expect" in d:
            entry["ok"] = [rep.K, rep.C] == list(map(float, d["expect"]))
            ok &= entry["ok"]
        if d.get("expect_axiom3_violation"):
            entry["ok"] = rep.axiom_defects["axiom3"] > 0
            ok &= entry["ok"]
        quasi[name] = entry
    return _result(10, "loxodromic", ok, {"translation": out, "quasi": quasi})


# 11
def criterion_dsl(corpus, seed: int = 0) -> dict:
    fixed = {}
    ok = True
    rand_spec = None
    for name, d in corpus["raag"].items():
        if "count" in d:
            rand_spec = d
            continue
        X = io.graph_from_json(d)
        got = {mode: compute_dsl(X, mode).dsl for mode in ("prec", "same-star")}
        good = got["prec"] == d["expect_dsl"] == got["same-star"]
        ok &= good
        fixed[name] = {"dsl": got["prec"], "dsl_same_star": got["same-star"],
                       "expected": d["expect_dsl"], "ok": good}
    mono = {"graphs": 0, "subgraphs": 0, "violations": []}
    if rand_spec is not None:
        rng = make_rng(rand_spec["seed"] + seed)
        for _ in range(rand_spec["count"]):
            n = int(rng.integers(1, rand_spec["max_n"] + 1))
            X = random_graph(n, float(rng.uniform(0.2, 0.9)), rng)
            order = prec_max(X)
            full = compute_dsl(X, "prec", order).dsl
            mono["graphs"] += 1
            for _ in range(rand_spec["subgraphs"]):
                keep = sorted(np.flatnonzero(rng.random(n) < 0.6).tolist())
                sub = X.induced(keep)
                o = restrict(order, keep)
                if check_admissible(sub, o.relation) is not None:
                    mono["violations"].append({"n": n, "keep": keep, "why": "restriction not admissible"})
                    continue
                got = compute_dsl(sub, "prec", o).dsl
                mono["subgraphs"] += 1
                if got > full:
                    mono["violations"].append({"n": n, "keep": keep, "sub": got, "full": full})
        ok &= mono["graphs"] == rand_spec["count"] and not mono["violations"]
    else:
        ok = False
    return _result(11, "dsl", ok, {"graphs": fixed, "monotonicity": mono})


CRITERIA = (criterion_axioms, criterion_free_oracle, criterion_walls, criterion_median_graphs,
            criterion_coarse, criterion_induction, criterion_drift_positive,
            criterion_drift_zero, criterion_kac, criterion_loxodromic, criterion_dsl)


def check_all(root=None, seed: int = 0, only=None) -> dict:
    """Run every criterion (or those numbered in ``only``) over the corpus at ``root``."""
    corpus = load_corpus(root)
    results = [f(corpus, seed) for i, f in enumerate(CRITERIA, 1) if only is None or i in only]
    return {"seed": seed, "ok": all(r["ok"] for r in results), "criteria": results}
