"""JSON and CSV formats.

Reports are written with a fixed key order and no timestamps, so equal
inputs give byte-equal files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .induction import FiniteGroup
from .median_core import FiniteMedianAlgebra
from .metric import FiniteMetricSpace, Graph


def plain(obj):
    """Recursively turn numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return x
    return obj


def _format(obj, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_format(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return json.dumps(obj, separators=(", ", ": "))      # scalar rows stay on one line
        return "[\n" + ",\n".join(pad + _format(v, depth + 1) for v in obj) + "\n" + end + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """Indented JSON with every list of scalars on a single line."""
    return _format(plain(obj), 0) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}: not valid JSON ({e})") from None


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InvalidInput(f"{where}: missing field {key!r}")
    return d[key]


# algebra: {"elements": [...], "mu": [[i, j, k, m], ...]} meaning mu(i, j, k) = m

def algebra_to_json(alg: FiniteMedianAlgebra) -> dict:
    """Symmetric tables are written for i <= j <= k only; others in full."""
    mu = alg.mu
    n = alg.size
    symmetric = bool(np.array_equal(mu, mu.transpose(1, 0, 2)) and
                     np.array_equal(mu, mu.transpose(0, 2, 1)))
    if symmetric:
        quads = [[i, j, k, int(mu[i, j, k])] for i in range(n) for j in range(i, n) for k in range(j, n)]
    else:
        quads = [[i, j, k, int(mu[i, j, k])] for i in range(n) for j in range(n) for k in range(n)]
    return {"elements": list(alg.elements), "mu": quads}


def algebra_from_json(d: dict) -> FiniteMedianAlgebra:
    """Entries given explicitly win; the rest are filled by permuting the arguments."""
    elements = _need(d, "elements", "algebra")
    quads = _need(d, "mu", "algebra")
    n = len(elements)
    mu = np.full((n, n, n), -1, dtype=np.int64)
    explicit = np.zeros((n, n, n), dtype=bool)
    try:
        q = np.asarray(quads, dtype=np.int64).reshape(-1, 4)
    except (TypeError, ValueError):
        raise InvalidInput("algebra: mu must be a list of [i, j, k, m] entries") from None
    if len(q) and (q.min() < 0 or q.max() >= n):
        raise InvalidInput("algebra: mu refers to an unknown element")
    mu[q[:, 0], q[:, 1], q[:, 2]] = q[:, 3]
    explicit[q[:, 0], q[:, 1], q[:, 2]] = True
    bad = np.flatnonzero(mu[q[:, 0], q[:, 1], q[:, 2]] != q[:, 3])
    if len(bad):
        i, j, k, _ = q[bad[0]]
        raise InvalidInput(f"algebra: two values given for mu({elements[i]}, {elements[j]}, {elements[k]})")
    filled = np.full((n, n, n), -1, dtype=np.int64)
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        idx = q[:, list(perm)]
        free = ~explicit[idx[:, 0], idx[:, 1], idx[:, 2]]
        a, b, c, v = idx[free, 0], idx[free, 1], idx[free, 2], q[free, 3]
        prev = filled[a, b, c]
        clash = np.flatnonzero((prev >= 0) & (prev != v))
        if len(clash):
            t = clash[0]
            raise InvalidInput(f"algebra: symmetric closure gives two values for "
                               f"mu({elements[a[t]]}, {elements[b[t]]}, {elements[c[t]]})")
        filled[a, b, c] = v
        # a clash inside one batch shows up as a mismatch after writing
        mismatch = np.flatnonzero(filled[a, b, c] != v)
        if len(mismatch):
            t = mismatch[0]
            raise InvalidInput(f"algebra: symmetric closure gives two values for "
                               f"mu({elements[a[t]]}, {elements[b[t]]}, {elements[c[t]]})")
    mu = np.where(explicit, mu, filled)
    if (mu < 0).any():
        i, j, k = (int(x) for x in np.argwhere(mu < 0)[0])
        raise InvalidInput(f"algebra: no value for mu({elements[i]}, {elements[j]}, {elements[k]})")
    return FiniteMedianAlgebra(tuple(elements), mu)


# graph: {"id": ..., "vertices": n, "edges": [[i, j], ...], "labels": [...]}

def graph_to_json(g: Graph, gid: str = "graph") -> dict:
    out = {"id": gid, "vertices": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        out["labels"] = list(g.labels)
    return out


def graph_from_json(d: dict) -> Graph:
    n = _need(d, "vertices", "graph")
    edges = _need(d, "edges", "graph")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidInput("graph: vertices must be a non-negative integer")
    try:
        edges = tuple((int(e[0]), int(e[1])) for e in edges)
    except (TypeError, ValueError, IndexError):
        raise InvalidInput("graph: edges must be pairs of vertex indices") from None
    labels = d.get("labels")
    return Graph(n, edges, tuple(labels) if labels else None)


# metric: {"id": ..., "points": n, "dist": [[...]], "labels": [...]}

def metric_from_json(d: dict) -> FiniteMetricSpace:
    """A metric file, or a graph file read as its path metric."""
    if "dist" in d:
        dist = np.asarray(d["dist"])
        n = d.get("points", len(dist))
        if dist.shape != (n, n):
            raise InvalidInput(f"metric: dist must be {n} x {n}")
        if dist.dtype.kind not in "iuf":
            raise InvalidInput("metric: distances must be numbers")
        labels = d.get("labels")
        return FiniteMetricSpace(dist, tuple(labels) if labels else None)
    return graph_from_json(d).metric()


def metric_to_json(space: FiniteMetricSpace, sid: str = "space") -> dict:
    out = {"id": sid, "points": space.n, "dist": space.dist.tolist()}
    if space.labels:
        out["labels"] = list(space.labels)
    return out


# group: {"order": n, "mul": [[...]], "lattice": [...], "gens_lattice": [...], "gens_group": [...]}

def group_from_json(d: dict) -> tuple[FiniteGroup, dict]:
    order = _need(d, "order", "group")
    mul = np.asarray(_need(d, "mul", "group"))
    if mul.shape != (order, order):
        raise InvalidInput(f"group: mul must be {order} x {order}")
    labels = d.get("labels")
    G = FiniteGroup(mul, tuple(labels) if labels else None, d.get("name", "G"))
    extra = {
        "lattice": [int(x) for x in d.get("lattice", range(order))],
        "gens_lattice": [int(x) for x in d["gens_lattice"]] if "gens_lattice" in d else None,
        "gens_group": [int(x) for x in d["gens_group"]] if "gens_group" in d else None,
    }
    return G, extra


def group_to_json(G: FiniteGroup, lattice=None, gens_lattice=None, gens_group=None) -> dict:
    out = {"order": G.order, "mul": G.mul.tolist()}
    if G.labels:
        out["labels"] = list(G.labels)
    out["name"] = G.name
    if lattice is not None:
        out["lattice"] = [int(x) for x in lattice]
    if gens_lattice is not None:
        out["gens_lattice"] = [int(x) for x in gens_lattice]
    if gens_group is not None:
        out["gens_group"] = [int(x) for x in gens_group]
    return out


# action: {"space": id, "action": {"element": [permutation], ...}, "basepoint": i}

def action_from_json(d: dict) -> tuple[dict, int]:
    act = _need(d, "action", "action")
    if not isinstance(act, dict):
        raise InvalidInput("action: 'action' must map elements to permutations")
    return {int(k): list(v) for k, v in act.items()}, int(d.get("basepoint", 0))


def action_to_json(space_id: str, action: dict, basepoint: int = 0) -> dict:
    return {"space": space_id,
            "action": {str(k): [int(x) for x in v] for k, v in sorted(action.items())},
            "basepoint": int(basepoint)}


def drift_csv(est, every: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "mean_distance", "slope_estimate", "ci_halfwidth"])
    for n, mean, slope, ci in est.csv_rows(every):
        w.writerow([n, repr(mean), repr(slope), repr(ci)])
    return buf.getvalue()
