import json
import pathlib
import subprocess
import sys

import pytest

from upir import catalog, document
from upir.cli import main

ALG = pathlib.Path(__file__).resolve().parent.parent / "algebras"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def test_pir_torus_both(capsys):
    code, rep, _ = run_json(capsys, "pir", str(ALG / "torus1.alg"), "--method", "both")
    assert code == 0
    assert rep["structural"]["is_pir"] and rep["brute"]["is_pir"] and rep["agreement"]
    assert rep["schema_version"] == 1
    assert rep["command"][:2] == ["pir", str(ALG / "torus1.alg")]
    assert rep["structural"]["certificate"] == {"torus": [[1]], "generator": [0]}


def test_pir_no_verdict_exits_zero(capsys):
    code, rep, _ = run_json(capsys, "pir", str(ALG / "truncated2.alg"))
    assert code == 0
    assert not rep["brute"]["is_pir"]
    assert rep["brute"]["certificate"]["right"]["non_principal_ideal"] == [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    code, rep, _ = run_json(capsys, "pir", str(ALG / "nonabelian2.alg"), "--method", "structural")
    assert code == 0 and rep["structural"]["certificate"]["reason"] == "non-abelian"


def test_huge_is_cap_error(capsys):
    code, _, err = run(capsys, "pir", str(ALG / "huge.alg"))
    assert code == 2 and "CapExceeded" in err
    code, rep, _ = run_json(capsys, "pir", str(ALG / "huge.alg"), "--method", "brute")
    assert code == 2 and rep["error"] == "CapExceeded"
    code, _, _ = run(capsys, "pir", str(ALG / "torus1.alg"), "--max-env-dim", "1")
    assert code == 2


def test_validate_exit_codes(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "validate", str(ALG / "bad_restriction.alg"))
    assert code == 1 and rep["violations"] == ["restriction(y)"]
    code, rep, _ = run_json(capsys, "validate", str(ALG / "mixed11.alg"))
    assert code == 0 and rep["ok"]
    bad = tmp_path / "bad.alg"
    bad.write_text('{"p": 2, "basis": ["x"], "pmap": {"y": {"x": 1}}}')
    code, rep, _ = run_json(capsys, "validate", str(bad))
    assert code == 1 and "'y'" in rep["message"]
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.alg"))
    assert code == 1
    code, _, _ = run(capsys, "pir", str(ALG / "bad_restriction.alg"))
    assert code == 1


def test_large_prime_is_cap_error(capsys, tmp_path):
    f = tmp_path / "p11.alg"
    f.write_text('{"p": 11, "basis": ["x"], "bracket": [], "pmap": {}}')
    code, _, _ = run(capsys, "validate", str(f))
    assert code == 2


def test_analyze(capsys):
    code, rep, _ = run_json(capsys, "analyze", str(ALG / "mixed11.alg"))
    assert code == 0
    assert rep["fitting"] == {"torus": [[1, 0, 0]], "nil": [[0, 1, 0], [0, 0, 1]]}
    assert rep["cyclic"]["value"] and not rep["nilcyclic"]["value"]
    assert rep["dn"][0] == {"n": 1, "dim": 3} and rep["dn"][1] == {"n": 2, "dim": 2}
    code, rep, _ = run_json(capsys, "analyze", str(ALG / "nonabelian2.alg"))
    assert code == 0 and "fitting" not in rep and rep["center"] == []


def test_env(capsys):
    code, rep, _ = run_json(capsys, "env", str(ALG / "torus1.alg"))
    assert code == 0
    assert rep["dim_env"] == 2 and rep["left_integral"] == [[1, 1]] and rep["epsilon_left_integral"] == 1
    code, rep, _ = run_json(capsys, "env", str(ALG / "nonabelian2.alg"))
    assert rep["left_integral_element"] == "y + x*y"
    assert rep["omega_power_dims"] == [{"n": 1, "dim": 3}, {"n": 2, "dim": 3}]


def test_audit(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "audit", "--p", "2", "--dim", "2", "--exhaustive", "--out", str(tmp_path))
    assert code == 0 and rep["disagreements"] == [] and rep["count"] == 19
    assert list(tmp_path.iterdir()) == []
    code, _, _ = run(capsys, "audit", "--p", "2", "--dim", "3", "--exhaustive")
    assert code == 2


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out.split() == list(catalog.KINDS)
    code, out, _ = run(capsys, "catalog", "emit", "nonabelian2")
    assert code == 0
    assert document.parse(out).same_tables(catalog.make("nonabelian2", 2))
    code, rep, _ = run_json(capsys, "catalog", "emit", "mixed", "--a", "1", "--b", "1", "--p", "3")
    assert document.from_dict(rep["document"]).same_tables(catalog.make("mixed", 3, a=1, b=1))
    code, _, _ = run(capsys, "catalog", "emit", "mixed", "--a", "1")
    assert code == 1
    code, _, _ = run(capsys, "catalog", "emit")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["pir", str(ALG / "mixed11.alg")],
        ["analyze", str(ALG / "nonabelian2.alg")],
        ["env", str(ALG / "truncated2.alg")],
        ["audit", "--p", "3", "--dim", "2", "--sample", "5", "--seed", "7"],
    ],
)
def test_json_is_deterministic(capsys, argv):
    _, _, first = run_json(capsys, *argv)
    _, _, second = run_json(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "upir", "pir", str(ALG / "torus1.alg"), "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["agreement"] is True
