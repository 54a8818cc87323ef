"""The bundled corpus used by ``medianlab check-all``.

The JSON files under ``medianlab/corpus`` are generated by ``build_corpus``
(run ``python -m medianlab.corpus DIR`` to regenerate them).  Layout:

    algebras/*.json     median algebras as element lists plus ternary tables
    trees/trees.json    every tree on 1..12 vertices up to isomorphism
    graphs/*.json       median-graph recognition cases with the expected answer
    hyperbolic/*.json   graphs for the tree-approximation distortion check
    induction/*.json    group, lattice, space and action for the induced space
    walks/*.json        drift, recurrence and discretization configurations
    translation/*.json  elements for the translation-length check
    quasi/*.json        sample files for the quasi-action check
    raag/*.json         defining graphs with their expected d_SL
"""

from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import networkx as nx
import numpy as np

from . import io
from .coarse import min_sum_table
from .induction import (cyclic_group, dihedral_group, direct_product, generated_subgroup,
                        symmetric_group, word_metric)
from .median_core import FiniteMedianAlgebra, boolean_cube
from .metric import (Graph, box_product, complete_bipartite, complete_graph, cycle_graph,
                     hypercube_graph, path_graph, petersen_graph)

SECTIONS = ("algebras", "trees", "graphs", "hyperbolic", "induction", "walks",
            "translation", "quasi", "raag")


def default_dir() -> Path:
    return Path(str(resources.files("medianlab") / "corpus"))


def all_trees(max_n: int = 12) -> list[Graph]:
    out = [Graph(1, ())]
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            out.append(Graph(n, tuple(sorted(tuple(sorted(e)) for e in t.edges()))))
    return out


def graph_algebra(g: Graph) -> FiniteMedianAlgebra:
    """Median algebra of a median graph, through the min-sum table."""
    labels = g.labels or tuple(str(v) for v in range(g.n))
    return FiniteMedianAlgebra(labels, min_sum_table(g.metric()))


def _algebras() -> dict:
    out = {}
    for n in range(7):
        out[f"cube{n}"] = io.algebra_to_json(boolean_cube(n))
    out["grid3x3"] = io.algebra_to_json(graph_algebra(box_product(path_graph(3), path_graph(3))))
    out["grid8x8"] = io.algebra_to_json(graph_algebra(box_product(path_graph(8), path_graph(8))))
    out["grid2x3x4"] = io.algebra_to_json(graph_algebra(
        box_product(box_product(path_graph(2), path_graph(3)), path_graph(4))))
    out["star6"] = io.algebra_to_json(graph_algebra(Graph(7, tuple((0, i) for i in range(1, 7)))))
    out["path10"] = io.algebra_to_json(graph_algebra(path_graph(10)))
    return out


def _graphs() -> dict:
    cases = {
        "q4": (hypercube_graph(4), True),
        "p2xp3": (box_product(path_graph(2), path_graph(3)), True),
        "p3xp4": (box_product(path_graph(3), path_graph(4)), True),
        "p4xp5": (box_product(path_graph(4), path_graph(5)), True),
        "p2xp3xp3": (box_product(box_product(path_graph(2), path_graph(3)), path_graph(3)), True),
        "k23": (complete_bipartite(2, 3), False),
        "c6": (cycle_graph(6), False),
    }
    return {k: dict(io.graph_to_json(g, k), expect_median=v) for k, (g, v) in cases.items()}


def _hyperbolic() -> dict:
    out = {}
    for n in (5, 6, 7, 9, 12):
        out[f"c{n}"] = io.graph_to_json(cycle_graph(n), f"c{n}")
    out["petersen"] = io.graph_to_json(petersen_graph(), "petersen")
    # a chain of six triangles sharing vertices
    edges = []
    for i in range(6):
        a, b, c = 2 * i, 2 * i + 1, 2 * i + 2
        edges += [(a, b), (b, c), (a, c)]
    out["triangle_chain"] = io.graph_to_json(Graph(13, tuple(edges)), "triangle_chain")
    # a tree of 5-cycles: a central pentagon with a pentagon glued on each vertex
    edges = [(i, (i + 1) % 5) for i in range(5)]
    nxt = 5
    for v in range(5):
        ring = [v] + list(range(nxt, nxt + 4))
        edges += [(ring[i], ring[(i + 1) % 5]) for i in range(5)]
        nxt += 4
    out["pentagon_tree"] = io.graph_to_json(Graph(nxt, tuple(edges)), "pentagon_tree")
    # a tree with a few chords, fixed seed
    rng = np.random.default_rng(2024)
    seq = rng.integers(0, 20, 18)
    t = nx.from_prufer_sequence(seq.tolist())
    extra = [(0, 5), (3, 11), (7, 14)]
    g = Graph(20, tuple(sorted(set(tuple(sorted(e)) for e in list(t.edges()) + extra))))
    out["tree_chords"] = io.graph_to_json(g, "tree_chords")
    out["grid4x4"] = io.graph_to_json(box_product(path_graph(4), path_graph(4)), "grid4x4")
    return out


def _perm_action(G, elems, perms_of):
    return {int(g): [int(x) for x in perms_of(g)] for g in elems}


def _induction() -> dict:
    out = {}
    S3 = symmetric_group(3)
    A3 = [g for g, p in enumerate(S3.permutations)
          if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0]
    rot = next(g for g in A3 if g != 0)
    out["s3_a3_triangle"] = {
        "id": "s3_a3_triangle", "exhaustive": True,
        "group": io.group_to_json(S3, A3, [rot], [S3.labels.index("102"), rot]),
        "space": io.graph_to_json(complete_graph(3), "triangle"),
        "action": io.action_to_json("triangle", {rot: S3.permutations[rot]}, 0),
    }
    Z4 = cyclic_group(4)
    out["z4_flip_p3"] = {
        "id": "z4_flip_p3", "exhaustive": True,
        "group": io.group_to_json(Z4, [0, 2], [2], [1]),
        "space": io.graph_to_json(path_graph(3), "p3"),
        "action": io.action_to_json("p3", {2: [2, 1, 0]}, 0),
    }
    D4 = dihedral_group(4)
    out["d4_c4_rotation"] = {
        "id": "d4_c4_rotation", "exhaustive": True,
        "group": io.group_to_json(D4, range(4), [1], [1, 4]),
        "space": io.graph_to_json(cycle_graph(4), "c4"),
        "action": io.action_to_json("c4", {1: D4.permutations[1]}, 0),
    }
    D6 = dihedral_group(6)
    out["d6_c6_rotation"] = {
        "id": "d6_c6_rotation", "exhaustive": False,
        "group": io.group_to_json(D6, range(6), [1], [1, 6]),
        "space": io.graph_to_json(cycle_graph(6), "c6"),
        "action": io.action_to_json("c6", {1: D6.permutations[1]}, 0),
    }
    # order 48: S4 x Z2 over a dihedral subgroup of order 8, for the cocycle identity
    G = direct_product(symmetric_group(4), cyclic_group(2))
    a = G.labels.index("(1230,0)")
    b = G.labels.index("(3210,1)")
    lat = generated_subgroup(G, [a, b])
    out["s4xz2_cocycle"] = {
        "id": "s4xz2_cocycle", "exhaustive": True, "cocycle_only": True,
        "group": io.group_to_json(G, lat, [a, b], list(range(1, G.order))),
    }
    return out


def _walks() -> dict:
    out = {}
    out["f2"] = {"id": "f2", "kind": "drift", "source": "free-group", "rank": 2,
                 "steps": 10000, "trials": 200}
    out["integer"] = {"id": "integer", "kind": "drift", "source": "integer",
                      "steps": 10000, "trials": 2000}
    S3 = symmetric_group(3)
    out["bounded_s3"] = {"id": "bounded_s3", "kind": "drift", "source": "finite-group",
                         "group": io.group_to_json(S3), "gens": [1, 2],
                         "space": io.graph_to_json(complete_graph(3), "triangle"),
                         "action": {str(g): list(S3.permutations[g]) for g in range(S3.order)},
                         "x0": 0, "steps": 10000, "trials": 200}
    out["kac_q3"] = {"id": "kac_q3", "kind": "kac", "graph": io.graph_to_json(hypercube_graph(3), "q3"),
                     "perms": [], "p0": 0, "steps": 100000, "trials": 1, "expected": 8}
    out["kac_petersen"] = {"id": "kac_petersen", "kind": "kac",
                           "graph": io.graph_to_json(petersen_graph(), "petersen"),
                           "perms": [], "p0": 0, "steps": 100000, "trials": 1, "expected": 10}
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(i, i + 6) for i in range(6)]
    rot = [(i + 2) % 6 for i in range(6)] + [6 + (i + 2) % 6 for i in range(6)]
    out["kac_c6_pendants_z3"] = {"id": "kac_c6_pendants_z3", "kind": "kac",
                                 "graph": io.graph_to_json(Graph(12, tuple(edges)), "c6_pendants"),
                                 "perms": [rot], "p0": 0, "steps": 100000, "trials": 1}
    Z6 = cyclic_group(6)
    out["discretize_z6"] = {"id": "discretize_z6", "kind": "discretize",
                            "group": io.group_to_json(Z6, [0, 2, 4], [2], [1]),
                            "cayley_gens": [1], "p0": 0, "steps": 200, "trials": 200}
    return out


def _translation() -> dict:
    D6 = dihedral_group(6)
    return {
        "line": {"id": "line", "kind": "line", "N": 1000, "n_max": 100, "expect": 1.0},
        "free_group": {"id": "free_group", "kind": "free-group", "depth": 200, "n_max": 100,
                       "expect": 1.0},
        "d6_on_c6": {"id": "d6_on_c6", "kind": "permutations",
                     "space": io.graph_to_json(cycle_graph(6), "c6"),
                     "perms": [list(p) for p in D6.permutations], "x0": 0, "expect": 0.0},
    }


def _quasi() -> dict:
    n = 12
    Z = cyclic_group(n)
    maps = [[(g + x) % n for x in range(n)] for g in range(n)]
    iso = {"id": "z12_c12", "space": io.graph_to_json(cycle_graph(n), "c12"),
           "maps": maps, "word_dist": word_metric(Z, [1]).tolist(), "mul": Z.mul.tolist(),
           "expect": [1.0, 0.0]}
    # shifts on a segment seen through x -> 2x (+1 on odd), read back by halving
    m, pts = 11, 41
    shifts = list(range(-5, 6))
    qmaps = [[min(pts - 1, max(0, (2 * x + (x % 2) + 2 * s) // 2)) for x in range(pts)]
             for s in shifts]
    line = Graph(pts, tuple((i, i + 1) for i in range(pts - 1)))
    qmul = [[min(m - 1, max(0, a + b + 5)) for b in shifts] for a in shifts]
    qdist = [[abs(a - b) for b in shifts] for a in shifts]
    conj = {"id": "segment_conjugated", "space": io.graph_to_json(line, "segment"),
            "maps": qmaps, "word_dist": qdist, "mul": qmul}
    # g.x = x + g^2 on Z/12: a map that ignores composition
    bad_maps = [[(x + g * g) % n for x in range(n)] for g in range(n)]
    bad = {"id": "squares_c12", "space": io.graph_to_json(cycle_graph(n), "c12"),
           "maps": bad_maps, "word_dist": word_metric(Z, [1]).tolist(), "mul": Z.mul.tolist(),
           "expect_axiom3_violation": True}
    return {"z12_c12": iso, "segment_conjugated": conj, "squares_c12": bad}


def _raag() -> dict:
    out = {}
    for d in range(1, 7):
        out[f"k{d}"] = dict(io.graph_to_json(complete_graph(d), f"k{d}"), expect_dsl=d)
    out["p3"] = dict(io.graph_to_json(path_graph(3), "p3"), expect_dsl=1)
    out["c4"] = dict(io.graph_to_json(cycle_graph(4), "c4"), expect_dsl=1)
    out["random"] = {"id": "random", "count": 100, "max_n": 15, "subgraphs": 10, "seed": 0}
    return out


def build_corpus(root) -> None:
    root = Path(root)
    parts = {"algebras": _algebras(), "graphs": _graphs(), "hyperbolic": _hyperbolic(),
             "induction": _induction(), "walks": _walks(), "translation": _translation(),
             "quasi": _quasi(), "raag": _raag()}
    for section, items in parts.items():
        (root / section).mkdir(parents=True, exist_ok=True)
        for name, obj in items.items():
            (root / section / f"{name}.json").write_text(io.dumps(obj))
    (root / "trees").mkdir(parents=True, exist_ok=True)
    trees = [io.graph_to_json(t, f"tree{i}") for i, t in enumerate(all_trees(12))]
    (root / "trees" / "trees.json").write_text(io.dumps({"trees": trees}))


def load_corpus(root=None) -> dict:
    """section -> {name: parsed JSON}, names in sorted order."""
    root = default_dir() if root is None else Path(root)
    if not root.is_dir():
        raise io.InvalidInput(f"corpus directory not found: {root}")
    out = {}
    for section in SECTIONS:
        d = root / section
        out[section] = {p.stem: io.read_json(p) for p in sorted(d.glob("*.json"))} if d.is_dir() else {}
    return out


if __name__ == "__main__":
    build_corpus(sys.argv[1] if len(sys.argv) > 1 else default_dir())
