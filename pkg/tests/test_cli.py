import csv
import json
import subprocess
import sys

import pytest

from liouville.cli import main

KAPPA = "(4*k*x + 4*k - 3)/(4*(1-x)^2*(1+x)^2)"


def run_json(capsys, *argv):
    code = main(["--json", "-", *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else None), out


def test_kovacic_report(capsys):
    code, doc, _ = run_json(capsys, "kovacic", "--r", KAPPA, "--param", "k=3")
    assert code == 0
    assert doc["schema_version"] == "1" and doc["command"] == "kovacic"
    k = doc["result"]["kovacic"]
    assert k["case"] == 1 and k["solvable"] is True
    assert k["verified"].startswith("exact residual")
    assert doc["result"]["verdict"]["conclusion"] == "obstruction-not-found"


def test_kovacic_sl2(capsys):
    code, doc, _ = run_json(capsys, "kovacic", "--r", KAPPA, "--param", "k=2")
    assert code == 0
    assert doc["result"]["kovacic"]["galois_group"]["tag"] == "SL2"
    assert doc["result"]["verdict"]["conclusion"] == "not-meromorphically-integrable"


def test_json_is_deterministic(capsys):
    argv = ["kovacic", "--r", KAPPA, "--param", "k=6"]
    _, _, first = run_json(capsys, *argv)
    _, _, second = run_json(capsys, *argv)
    assert first == second


def test_text_rendering_follows_json(capsys, tmp_path):
    path = tmp_path / "out.json"
    assert main(["--json", str(path), "kovacic", "--r", "2/x^2"]) == 0
    text = capsys.readouterr().out
    doc = json.loads(path.read_text())
    assert text.startswith("liouville ")
    assert f"tag: {doc['result']['kovacic']['galois_group']['tag']}" in text


def test_rect4bp(capsys):
    code, doc, _ = run_json(capsys, "problem", "rect4bp")
    assert code == 0
    res = doc["result"]
    assert res["omega2"]["exact"] == "48/7 - 12/7*sqrt(2)"
    assert res["verdict"]["conclusion"] == "not-meromorphically-integrable"


def test_uncoupled_enclosure(capsys):
    code, doc, _ = run_json(capsys, "problem", "uncoupled", "--mu", "7/3", "--spectral-only")
    assert code == 0
    w = doc["result"]["omega2"]
    assert abs(w["approx"] - 6) < 1e-9
    assert doc["result"]["verdict"]["conclusion"] == "obstruction-not-found"


def test_e3bp_grid_csv(capsys, tmp_path):
    path = tmp_path / "k.csv"
    code, doc, _ = run_json(capsys, "problem", "e3bp", "--mu", "1/2", "--grid", "3", "--csv", str(path))
    assert code == 0
    assert doc["result"]["grid"]["kappa2_negative"] is True
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 9


def test_kimura_commands(capsys):
    code, doc, _ = run_json(capsys, "kimura", "--exponents", "1/2,1/3,1/4")
    assert code == 0 and doc["result"]["kimura"]["witness"]["row"] == 4
    code, doc, _ = run_json(capsys, "kimura", "--exponents", "1/3,1/5,2/7")
    assert code == 0 and doc["result"]["kimura"]["solvable"] is False


def test_reduce_and_algebrize(capsys):
    code, doc, _ = run_json(capsys, "reduce", "--a1", "-1/x", "--a0", "-x", "--kovacic")
    assert code == 0 and "kovacic" in doc["result"]
    code, doc, _ = run_json(capsys, "algebrize", "--f", "(t - 1 + 12)/(4*(1-t))", "--alpha", "1 - t^2")
    assert code == 0 and doc["result"]["infinity"]


def test_poincare_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, doc, _ = run_json(capsys, "poincare", "--mu", "1", "--h", "-1/2", "--crossings", "2", "--csv", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 2 * len(doc["result"]["orbits"])
    assert all(o["invariant_curve_deviation"] < 1e-4 for o in doc["result"]["orbits"])


@pytest.mark.parametrize("argv, code", [
    (["kovacic", "--r", "x +"], 3),
    (["kovacic", "--r", "1/(x^3+x+1)^2"], 4),
    (["problem", "anisotropic", "--mu", "2"], 2),
    (["kimura", "--exponents", "1,2"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert capsys.readouterr().err.startswith("liouville: ")


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["kovacic"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liouville", "kimura", "--exponents", "-1/2,-1,5/2"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert "solvable: yes" in proc.stdout
