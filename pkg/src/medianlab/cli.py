"""Command-line front end.

Every subcommand writes one JSON report (CSV for ``drift``) to ``--out`` or
stdout.  Exit codes: 0 success, 1 a checked property failed or a budget ran
out (the report says which), 2 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import BudgetExceeded, InternalContradiction, InvalidInput


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _seed(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _name(path) -> str:
    return Path(path).stem


def _load_algebra(path):
    return io.algebra_from_json(io.read_json(path))


def _load_graph(path):
    return io.graph_from_json(io.read_json(path))


def _load_space(path):
    d = io.read_json(path)
    return io.metric_from_json(d), d.get("id", _name(path))


# ---- median algebras

def cmd_verify_median(args):
    from .median_core import verify_median_axioms
    alg = _load_algebra(args.algebra)
    rep = verify_median_axioms(alg, args.samples, args.seed)
    out = {"algebra": _name(args.algebra), "elements": alg.size, **rep.as_dict(alg)}
    out["invariant"] = None if rep.ok else f"median axiom {rep.axiom}"
    return out, 0 if rep.ok else 1


def cmd_free_median(args):
    from .median_core import free_median_algebra
    free = free_median_algebra(args.n, args.cap)
    out = io.algebra_to_json(free.algebra)
    out["generators"] = free.generators
    return out, 0


def cmd_interval(args):
    from .median_core import algebraic_interval
    alg = _load_algebra(args.algebra)
    iv = algebraic_interval(alg, args.a, args.b)
    return {"algebra": _name(args.algebra), "a": args.a, "b": args.b,
            "interval": alg.labels(sorted(iv))}, 0


def cmd_wall(args):
    from .median_core import check_wall, find_wall
    alg = _load_algebra(args.algebra)
    x, y = alg.index(args.x), alg.index(args.y)
    w = find_wall(alg, x, y)
    v = check_wall(alg, w, x, y)
    out = {"algebra": _name(args.algebra), "x": args.x, "y": args.y,
           "side_minus": alg.labels(sorted(w.side_minus)),
           "side_plus": alg.labels(sorted(w.side_plus)), "valid": v.ok}
    if not v.ok:
        out["invariant"] = "wall is a convex bipartition separating x and y"
        out["witness"] = str(v.witness)
    return out, 0 if v.ok else 1


def cmd_rank(args):
    from .median_core import rank
    alg = _load_algebra(args.algebra)
    r = rank(alg, args.cap)
    return {"algebra": _name(args.algebra), "rank": r.rank, "capped": r.capped}, 0


# ---- metric spaces and coarse medians

def cmd_median_graph(args):
    from .metric import is_median_graph
    d = io.read_json(args.graph)
    res = is_median_graph(io.graph_from_json(d))
    wit = None
    if res.witness is not None:
        a, b, c, meet = res.witness
        wit = {"triple": [a, b, c], "intervals_meet_in": sorted(meet)}
    return {"graph": d.get("id", _name(args.graph)), "median": res.ok, "witness": wit}, 0


def cmd_delta(args):
    from .metric import estimate_delta
    space, sid = _load_space(args.space)
    est = estimate_delta(space, args.exhaustive_limit, args.samples, args.seed)
    return {"space": sid, "delta": est.delta, "kind": est.kind, "samples": est.samples,
            "witness": list(est.witness) if est.witness else None}, 0


def cmd_coarse_check(args):
    from .coarse import CoarseMedianStructure, sweep_c2, verify_c1, verify_c2
    from .rng import make_rng
    space, sid = _load_space(args.space)
    cms = CoarseMedianStructure.build(space, sid)
    if args.merge:
        cms.merge_report(io.read_json(args.merge))
    verify_c1(cms, args.c1_mode, args.samples, args.seed)
    n = space.n
    max_p = min(args.max_p, n)
    total = sum(math.comb(n, p) for p in range(1, max_p + 1))
    if total <= args.subsets:
        sweep_c2(cms, max_p)
    else:
        rng = make_rng(args.seed)
        per_p = max(1, args.subsets // max_p)
        for p in range(1, max_p + 1):
            for _ in range(per_p):
                verify_c2(cms, sorted(rng.choice(n, p, replace=False).tolist()))
    return cms.report(), 0


# ---- induction

def _instance(path):
    from .checks import build_instance
    return build_instance(io.read_json(path))


def cmd_induce(args):
    from .induction import induce_space
    fga = _instance(args.instance)
    ind = induce_space(fga, args.cap, args.lazy, args.samples, args.seed)
    return {"instance": fga.name, "mode": ind.mode, "points": ind.size,
            "cosets": len(fga.transversal.U),
            "transversal": fga.transversal.as_dict(fga.group),
            "integrability": {str(k): v for k, v in sorted(ind.integrability.items())}}, 0


def cmd_verify_induced(args):
    from .induction import induce_space, verify_induced_action
    fga = _instance(args.instance)
    ind = induce_space(fga, args.cap, args.lazy, args.samples, args.seed)
    rep = verify_induced_action(fga, ind, samples=args.samples, seed=args.seed)
    out = {"instance": fga.name, **rep.as_dict()}
    out["invariant"] = None if rep.ok else rep.failures()
    return out, 0 if rep.ok else 1


# ---- walks

def _override(d: dict, args) -> dict:
    d = dict(d)
    for key in ("steps", "trials"):
        if getattr(args, key, None) is not None:
            d[key] = getattr(args, key)
    return d


def cmd_walk(args):
    from .walks import GraphWalk, WalkConfig, estimate_drift, kac_check
    d = _override(io.read_json(args.config), args)
    g = io.graph_from_json(d["graph"])
    p0 = int(d.get("p0", 0))
    perms = d.get("perms", [])
    cfg = WalkConfig(g, p0, int(d.get("steps", 1000)), int(d.get("trials", 1)), args.seed)
    est = estimate_drift(GraphWalk(g), cfg)
    kac = kac_check(g, perms, p0, cfg)
    config = {"graph": d["graph"].get("id", "graph"), "p0": p0, "steps": cfg.steps,
              "trials": cfg.trials, "gamma_generators": len(perms)}
    return {"config": config, "drift": est.slope, "ci": est.ci_halfwidth,
            "kac": {"empirical": kac.empirical, "predicted": kac.predicted},
            "seed": args.seed}, 0


def cmd_discretize(args):
    from .induction import generated_subgroup
    from .walks import (WalkConfig, discretized_walk, increment_homogeneity,
                        left_multiplication)
    d = _override(io.read_json(args.config), args)
    G, extra = io.group_from_json(d["group"])
    lattice = extra["lattice"]
    if extra["gens_lattice"] and set(generated_subgroup(G, extra["gens_lattice"])) != set(lattice):
        raise InvalidInput("gens_lattice does not generate the lattice")
    action = left_multiplication(G, lattice, d.get("cayley_gens"))
    p0 = int(d.get("p0", 0))
    cfg = WalkConfig(action.graph, p0, int(d.get("steps", 200)), int(d.get("trials", 1)), args.seed)
    dw = discretized_walk(action, p0, cfg, args.trial, args.strict)
    test = increment_homogeneity(action, p0, cfg)
    return {"config": {"group_order": G.order, "lattice": list(action.lattice), "p0": p0,
                       "steps": cfg.steps, "trials": cfg.trials, "trial": args.trial,
                       "strict": args.strict},
            "shift": dw.shift, "times": dw.times, "lattice_steps": dw.lattice_steps,
            "increments": dw.increments(G), "incomplete": dw.incomplete,
            "homogeneity": {"statistic": test.statistic, "pvalue": test.pvalue,
                            "dof": test.dof, "passed": test.passed},
            "seed": args.seed}, 0


def cmd_drift(args):
    from .checks import run_drift
    from .walks import GraphWalk, WalkConfig, estimate_drift
    d = _override(io.read_json(args.config), args)
    if "source" in d:
        est = run_drift(d, args.seed)
    else:
        g = io.graph_from_json(d["graph"])
        est = estimate_drift(GraphWalk(g), WalkConfig(g, int(d.get("p0", 0)), int(d["steps"]),
                                                      int(d["trials"]), args.seed))
    return io.drift_csv(est, args.every), 0


def cmd_kac(args):
    from .checks import run_kac
    d = _override(io.read_json(args.config), args)
    d.setdefault("perms", [])
    d.setdefault("p0", 0)
    d.setdefault("steps", 100000)
    d.setdefault("trials", 1)
    rep = run_kac(d, args.seed)
    return {"config": {"graph": d["graph"].get("id", "graph"), "p0": d["p0"],
                       "steps": d["steps"], "trials": d["trials"]},
            **rep.as_dict(), "seed": args.seed}, 0


def cmd_translation(args):
    from .walks import (free_group_generator, line_shift, permutation_translation,
                        translation_length)
    d = io.read_json(args.config)
    kind = d.get("kind")
    n_max = args.n_max or d.get("n_max", 100)
    if kind == "line":
        step, dist = line_shift(int(d["N"]))
        results = [translation_length(step, 0, n_max, dist, args.threshold).as_dict()]
    elif kind == "free-group":
        step, dist = free_group_generator(int(d["depth"]), int(d.get("letter", 0)))
        results = [translation_length(step, (), n_max, dist, args.threshold).as_dict()]
    elif kind == "permutations":
        dmat = io.metric_from_json(d["space"]).dist
        results = [permutation_translation(p, dmat, int(d.get("x0", 0)), None, args.threshold).as_dict()
                   for p in d["perms"]]
    else:
        raise InvalidInput(f"unknown translation kind {kind!r}")
    return {"config": d.get("id", _name(args.config)), "kind": kind, "results": results}, 0


def cmd_quasi_check(args):
    from .walks import quasi_action_check
    d = io.read_json(args.samples)
    dist = io.metric_from_json(d["space"]).dist
    try:
        rep = quasi_action_check(np.array(d["maps"]), dist, np.array(d["word_dist"]),
                                 np.array(d["mul"]))
    except (KeyError, IndexError, ValueError) as e:
        raise InvalidInput(f"quasi-action samples are malformed: {e}") from None
    return {"instance": d.get("id", _name(args.samples)), **rep.as_dict()}, 0


def cmd_raag_dsl(args):
    from .raag import compute_dsl, order_from_pairs
    d = io.read_json(args.graph)
    X = io.graph_from_json(d)
    order = None
    if args.order:
        if args.mode != "prec":
            raise InvalidInput("--order only applies to --mode prec")
        order = order_from_pairs(X, io.read_json(args.order).get("pairs", []))
    res = compute_dsl(X, args.mode, order, args.budget)
    return res.as_dict(X, d.get("id", _name(args.graph))), 0


def cmd_check_all(args):
    from .checks import check_all
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise InvalidInput("--only takes comma-separated criterion numbers") from None
    rep = check_all(args.corpus, args.seed, only)
    return rep, 0 if rep["ok"] else 1


# ---- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="medianlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--seed", type=_seed, default=0)
        sp.add_argument("--out", help="report path (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("verify-median", cmd_verify_median, "check the median axioms of an algebra file")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--samples", type=_positive_int, help="sample (M3) instead of scanning")

    sp = add("free-median", cmd_free_median, "free median algebra on n generators")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--cap", type=_positive_int, default=4096)

    sp = add("interval", cmd_interval, "interval [a, b] of an algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("wall", cmd_wall, "a wall separating x and y")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    sp = add("rank", cmd_rank, "rank of an algebra, searched up to --cap")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--cap", type=_positive_int, default=4)

    sp = add("median-graph", cmd_median_graph, "decide whether a graph is median")
    sp.add_argument("--graph", required=True)

    sp = add("delta", cmd_delta, "four-point hyperbolicity constant of a graph or metric")
    sp.add_argument("--space", required=True, help="graph or metric file")
    sp.add_argument("--exhaustive-limit", type=_positive_int, default=60)
    sp.add_argument("--samples", type=_positive_int, default=1_000_000)

    sp = add("coarse-check", cmd_coarse_check, "measure the coarse-median constants")
    sp.add_argument("--space", required=True, help="graph or metric file")
    sp.add_argument("--c1-mode", choices=("exhaustive", "sampled"), default="exhaustive")
    sp.add_argument("--samples", type=_positive_int, default=100_000)
    sp.add_argument("--max-p", type=_positive_int, default=4)
    sp.add_argument("--subsets", type=_positive_int, default=100_000,
                    help="all subsets up to --max-p when there are at most this many, else a sample")
    sp.add_argument("--merge", help="earlier report for the same space")

    for name, func, text in (("induce", cmd_induce, "build the induced space"),
                             ("verify-induced", cmd_verify_induced, "check the induced action")):
        sp = add(name, func, text)
        sp.add_argument("--instance", required=True, help="file with group, space and action")
        sp.add_argument("--cap", type=_positive_int, default=10 ** 6)
        sp.add_argument("--lazy", action="store_true", help="sample functions past --cap")
        sp.add_argument("--samples", type=_positive_int, default=20000)

    sp = add("walk", cmd_walk, "drift and return times of a simple walk on a graph")
    sp.add_argument("--config", required=True)
    sp.add_argument("--steps", type=_positive_int)
    sp.add_argument("--trials", type=_positive_int)

    sp = add("discretize", cmd_discretize, "discretized walk on a lattice orbit")
    sp.add_argument("--config", required=True)
    sp.add_argument("--steps", type=_positive_int)
    sp.add_argument("--trials", type=_positive_int)
    sp.add_argument("--trial", type=int, default=0)
    sp.add_argument("--strict", action="store_true", help="count returns to p0 only")

    sp = add("drift", cmd_drift, "drift time series as CSV")
    sp.add_argument("--config", required=True)
    sp.add_argument("--steps", type=_positive_int)
    sp.add_argument("--trials", type=_positive_int)
    sp.add_argument("--every", type=_positive_int, default=1, help="write every k-th row")

    sp = add("kac", cmd_kac, "mean return time against 1 / stationary mass")
    sp.add_argument("--config", required=True)
    sp.add_argument("--steps", type=_positive_int)
    sp.add_argument("--trials", type=_positive_int)

    sp = add("translation", cmd_translation, "translation length estimates")
    sp.add_argument("--config", required=True)
    sp.add_argument("--n-max", type=_positive_int)
    sp.add_argument("--threshold", type=float, default=1e-3)

    sp = add("quasi-check", cmd_quasi_check, "measure quasi-action constants on samples")
    sp.add_argument("--samples", required=True)

    sp = add("raag-dsl", cmd_raag_dsl, "d_SL of a defining graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=("same-star", "prec"), default="same-star")
    sp.add_argument("--order", help="file with {\"pairs\": [[v, w], ...]} meaning v < w")
    sp.add_argument("--budget", type=_positive_int, default=10 ** 6)

    sp = add("check-all", cmd_check_all, "run the acceptance suite over a corpus")
    sp.add_argument("--corpus", help="corpus directory (default: the bundled one)")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--check-all" in argv:
        argv = ["check-all"] + [a for a in argv if a != "--check-all"]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report, code = args.func(args)
    except BudgetExceeded as e:
        report = {"command": args.command, "error": "budget exceeded", "message": str(e),
                  "partial": io.plain(e.partial)}
        code = 1
    except InternalContradiction as e:
        report = {"command": args.command, "error": "internal contradiction", "message": str(e)}
        code = 1
    except (InvalidInput, KeyError, TypeError) as e:
        msg = f"missing field {e}" if isinstance(e, KeyError) else str(e)
        print(f"medianlab {args.command}: {msg}", file=sys.stderr)
        return 2
    _emit(args, report if isinstance(report, str) else io.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
