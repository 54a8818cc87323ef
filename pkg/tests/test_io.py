import json

import numpy as np
import pytest

from medianlab import io
from medianlab.errors import InvalidInput
from medianlab.median_core import FiniteMedianAlgebra, boolean_cube
from medianlab.metric import FiniteMetricSpace, Graph, cycle_graph


def test_algebra_round_trip_is_exact():
    cube = boolean_cube(3)
    d = io.algebra_to_json(cube)
    assert len(d["mu"]) == 120                         # i <= j <= k triples only
    back = io.algebra_from_json(json.loads(io.dumps(d)))
    assert back.elements == cube.elements and np.array_equal(back.mu, cube.mu)


def test_asymmetric_table_is_written_in_full():
    alg = FiniteMedianAlgebra.from_function(["a", "b"], lambda a, b, c: a)
    d = io.algebra_to_json(alg)
    assert len(d["mu"]) == 8
    assert np.array_equal(io.algebra_from_json(d).mu, alg.mu)


def test_symmetric_closure_expands_on_load():
    d = {"elements": ["x", "y"], "mu": [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1], [1, 1, 1, 1]]}
    alg = io.algebra_from_json(d)
    assert alg.median("y", "x", "x") == 0 and alg.median("x", "y", "y") == 1


def test_incomplete_and_conflicting_tables_are_rejected():
    with pytest.raises(InvalidInput, match="no value"):
        io.algebra_from_json({"elements": ["x", "y"], "mu": [[0, 0, 0, 0]]})
    with pytest.raises(InvalidInput, match="two values"):
        io.algebra_from_json({"elements": ["x", "y"], "mu": [[0, 0, 0, 0], [0, 0, 0, 1]]})
    with pytest.raises(InvalidInput):
        io.algebra_from_json({"elements": ["x", "y"], "mu": [[0, 0, 1, 0], [0, 1, 0, 1]] + [[1, 1, 1, 1], [0, 0, 0, 0]]})
    with pytest.raises(InvalidInput):
        io.algebra_from_json({"elements": ["x"], "mu": [[0, 0, 0, 5]]})
    with pytest.raises(InvalidInput):
        io.algebra_from_json({"mu": []})


def test_graph_and_metric_round_trip():
    g = cycle_graph(5)
    d = json.loads(io.dumps(io.graph_to_json(g, "c5")))
    assert d["vertices"] == 5 and io.graph_from_json(d).edges == g.edges
    space = FiniteMetricSpace(np.array([[0, 1.5], [1.5, 0]]))
    m = json.loads(io.dumps(io.metric_to_json(space)))
    assert m["points"] == 2
    assert np.array_equal(io.metric_from_json(m).dist, space.dist)
    with pytest.raises(InvalidInput):
        io.graph_from_json({"vertices": -1, "edges": []})
    with pytest.raises(InvalidInput):
        io.metric_from_json({"points": 3, "dist": [[0, 1], [1, 0]]})


def test_dumps_is_stable():
    obj = {"b": [1, 2], "a": {"x": np.int64(3), "y": np.float64(0.5)}, "z": [[1], [2]]}
    assert io.dumps(obj) == io.dumps(obj)
    assert json.loads(io.dumps(obj)) == {"b": [1, 2], "a": {"x": 3, "y": 0.5}, "z": [[1], [2]]}
    assert io.plain(float("inf")) == "inf"


def test_read_json_errors(tmp_path):
    with pytest.raises(InvalidInput):
        io.read_json(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(InvalidInput):
        io.read_json(p)
