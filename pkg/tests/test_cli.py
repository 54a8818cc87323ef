import json
import subprocess
import sys
from importlib import resources

import pytest

from medianlab import io
from medianlab.cli import main
from medianlab.median_core import boolean_cube

CORPUS = resources.files("medianlab") / "corpus"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv, expect=0):
    code, out, err = run(capsys, *argv)
    assert code == expect, err
    return json.loads(out)


def test_free_median(capsys):
    rep = report(capsys, "free-median", "--n", 3)
    assert len(rep["elements"]) == 4 and len(rep["generators"]) == 3


def test_unknown_subcommand_exits_2(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "usage" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "medianlab", "free-median", "--n", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and len(json.loads(p.stdout)["elements"]) == 2


def test_drift_is_byte_deterministic(tmp_path, capsys):
    cfg = CORPUS / "walks" / "f2.json"
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "drift", "--config", cfg, "--steps", 300, "--trials", 20,
                   "--seed", 7, "--out", path)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "n,mean_distance,slope_estimate,ci_halfwidth"
    c = tmp_path / "c.csv"
    run(capsys, "drift", "--config", cfg, "--steps", 300, "--trials", 20, "--seed", 8, "--out", c)
    assert c.read_bytes() != a.read_bytes()


def test_schema_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "g.json"
    bad.write_text('{"vertices": 3}')
    code, out, err = run(capsys, "median-graph", "--graph", bad)
    assert code == 2 and "edges" in err and out == ""
    code, _, err = run(capsys, "verify-median", "--algebra", tmp_path / "missing.json")
    assert code == 2 and "no such file" in err


def test_verify_median(tmp_path, capsys):
    good = tmp_path / "cube.json"
    io.write_json(good, io.algebra_to_json(boolean_cube(2)))
    assert report(capsys, "verify-median", "--algebra", good)["ok"] is True
    d = io.algebra_to_json(boolean_cube(2))
    d["mu"] = [[i, j, k, (i + j + k) % 4 if len({i, j, k}) == 3 else m] for i, j, k, m in d["mu"]]
    bad = tmp_path / "bad.json"
    io.write_json(bad, d)
    rep = report(capsys, "verify-median", "--algebra", bad, expect=1)
    assert rep["ok"] is False and rep["invariant"]


def test_interval_wall_rank(capsys):
    alg = CORPUS / "algebras" / "cube3.json"
    rep = report(capsys, "interval", "--algebra", alg, "--a", "000", "--b", "011")
    assert sorted(rep["interval"]) == ["000", "001", "010", "011"]
    rep = report(capsys, "wall", "--algebra", alg, "--x", "000", "--y", "001")
    assert rep["valid"] and rep["side_plus"] == ["001", "011", "101", "111"]
    assert report(capsys, "rank", "--algebra", alg)["rank"] == 3


def test_metric_commands(capsys):
    rep = report(capsys, "median-graph", "--graph", CORPUS / "graphs" / "c6.json")
    assert rep["median"] is False
    rep = report(capsys, "median-graph", "--graph", CORPUS / "graphs" / "q4.json")
    assert rep["median"] is True
    rep = report(capsys, "delta", "--space", CORPUS / "hyperbolic" / "c6.json")
    assert rep["delta"] == 1.0
    rep = report(capsys, "coarse-check", "--space", CORPUS / "hyperbolic" / "c5.json",
                 "--max-p", 3)
    assert "h" in json.dumps(rep)


def test_induction_commands(capsys):
    inst = CORPUS / "induction" / "s3_a3_triangle.json"
    rep = report(capsys, "induce", "--instance", inst)
    assert rep["points"] == 9
    rep = report(capsys, "verify-induced", "--instance", inst)
    assert rep["ok"] is True


def test_walk_commands(capsys):
    walks = CORPUS / "walks"
    rep = report(capsys, "walk", "--config", walks / "kac_q3.json", "--steps", 2000, "--trials", 2)
    assert set(rep) >= {"drift", "ci", "kac", "seed"}
    rep = report(capsys, "discretize", "--config", walks / "discretize_z6.json", "--steps", 200)
    assert "lattice_steps" in rep
    rep = report(capsys, "kac", "--config", walks / "kac_q3.json")
    assert abs(rep["empirical"] - 8) / 8 <= 0.05
    rep = report(capsys, "translation", "--config", CORPUS / "translation" / "line.json")
    assert rep["results"][0]["estimate"] == 1 and rep["results"][0]["loxodromic"]
    rep = report(capsys, "quasi-check", "--samples", CORPUS / "quasi" / "z12_c12.json")
    assert (rep["K"], rep["C"]) == (1.0, 0.0)


def test_raag_dsl(tmp_path, capsys):
    rep = report(capsys, "raag-dsl", "--graph", CORPUS / "raag" / "k4.json", "--mode", "prec")
    assert rep["dsl"] == 4
    order = tmp_path / "order.json"
    order.write_text('{"pairs": [[1, 0]]}')
    code, _, err = run(capsys, "raag-dsl", "--graph", CORPUS / "raag" / "p3.json",
                       "--mode", "prec", "--order", order)
    assert code == 2 and "admissible" in err
    rep = report(capsys, "raag-dsl", "--graph", CORPUS / "raag" / "k6.json", "--budget", 2, expect=1)
    assert rep["error"] == "budget exceeded" and "partial" in rep


def test_free_median_budget(capsys):
    rep = report(capsys, "free-median", "--n", 4, "--cap", 5, expect=1)
    assert rep["error"] == "budget exceeded" and rep["partial"] > 5


def test_check_all_subset(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(capsys, "--check-all", "--only", "2", "--out", out)[0] == 0
    rep = json.loads(out.read_text())
    assert rep["ok"] and [c["id"] for c in rep["criteria"]] == [2]
