import json
import subprocess
import sys
from pathlib import Path

import pytest

from markov_cycles.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_cyclic(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "cyclic3.json", "--json")
    assert code == 0
    report = json.loads(out)
    assert set(report) >= {"pi", "D", "coefficients", "k_detect", "one_ne", "kolmogorov_gap", "det_delta"}
    assert report["pi"] == pytest.approx([1 / 3] * 3)
    assert report["one_ne"]["valid"] and report["one_ne"]["d"] == pytest.approx(1 / 3)
    assert report["k_detect"] == {"k": 1, "d": pytest.approx(1 / 3), "hamiltonian": True}
    assert report["kolmogorov_gap"] == 7 and report["det_delta"] == -7


def test_analyze_exact_and_csv(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "cyclic3.json", "--json", "--exact")
    report = json.loads(out)
    assert report["pi"] == ["1/3"] * 3 and report["one_ne"]["d"] == "1/3" and report["one_ne"]["residual"] == "0"
    code, out2, _ = run(capsys, "analyze", FIXTURES / "cyclic3.csv", "--json")
    assert code == 0 and json.loads(out2)["k_detect"]["k"] == 1


def test_analyze_equilibrium(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "equilibrium4.json", "--json")
    report = json.loads(out)
    assert code == 0 and report["detailed_balance"]
    assert all(v == "0" for v in report["coefficients"].values())
    assert report["k_detect"] is None
    assert report["one_ne"]["valid"] is False and report["one_ne"]["reason"].startswith("ReversibleRing")
    code, text, _ = run(capsys, "analyze", FIXTURES / "equilibrium4.json")
    assert "verdict: equilibrium" in text


def test_analyze_report_structure(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "ring4.json", "--json")
    report = json.loads(out)
    assert list(report["coefficients"]) == ["1,2,3", "1,2,4", "2,3,4"]
    assert report["coefficients"] == {"1,2,3": "0", "1,2,4": "1/8", "2,3,4": "1/8"}
    assert report["one_ne"]["valid"] and report["one_ne"]["d"] == "1/8"
    code, out, _ = run(capsys, "cycles", "--n", 4, "--json")
    cyc = json.loads(out)
    assert [b["triple"] for b in cyc["basis"]] == [[1, 2, 3], [1, 2, 4], [2, 3, 4]]
    assert cyc["lambda_decomposition"] == {"1,2,3": "0", "1,2,4": "1", "2,3,4": "1"}
    code, text, _ = run(capsys, "cycles", "--n", 4)
    assert "= 1*M(1,2,4) + 1*M(2,3,4)" in text


def test_analyze_is_deterministic(capsys):
    outs = {run(capsys, "analyze", FIXTURES / "ring4.json", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_synth_round_trip(tmp_path, capsys):
    path = tmp_path / "s.json"
    assert run(capsys, "synth", "--regime", "one-ne", "--n", 5, "--seed", 7, "-o", path)[0] == 0
    first = path.read_bytes()
    run(capsys, "synth", "--regime", "one-ne", "--n", 5, "--seed", 7, "-o", path)
    assert path.read_bytes() == first
    report = json.loads(run(capsys, "analyze", path, "--json")[1])
    assert report["k_detect"]["k"] == 1 and report["one_ne"]["valid"]

    run(capsys, "synth", "--regime", "equilibrium", "--n", 4, "--seed", 1, "-o", path)
    assert json.loads(run(capsys, "analyze", path, "--json")[1])["detailed_balance"]

    run(capsys, "synth", "--regime", "k-ne", "--k", 2, "--n", 5, "--seed", 1, "--exact", "-o", path)
    report = json.loads(run(capsys, "analyze", path, "--json")[1])
    assert report["k_detect"]["k"] == 2 and "/" in report["k_detect"]["d"]


def test_synth_errors(capsys):
    assert run(capsys, "synth", "--regime", "k-ne", "--n", 5)[0] == 2
    assert run(capsys, "synth", "--regime", "k-ne", "--k", 2, "--n", 4)[0] == 2


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", FIXTURES / "cyclic3.json", "--horizon", "1e5", "--json")
    report = json.loads(out)
    assert code == 0 and len(report["runs"]) == 3 and report["passing"] >= 2
    code, out, _ = run(capsys, "simulate", FIXTURES / "equilibrium4.json", "--horizon", "1e3", "--json")
    assert all(abs(e["analytic"]) < 1e-12 for e in json.loads(out)["runs"][0]["edges"])
    code, text, _ = run(capsys, "simulate", FIXTURES / "cyclic3.json", "--horizon", "100", "--seed", "4")
    assert "seed 4" in text


@pytest.mark.parametrize(
    "doc, needle",
    [
        ('{"n": 3, "q": [[0, 1], [1, 0]]}', "q"),
        ('{"n": 2, "q": [[0, "x"], [1, 0]]}', "q[1][2]"),
        ('{"n": 2}', "'q'"),
        ('{"n": 2, "q": [[0, 0], [1, 0]]}', "q[1,2]"),
        ('{"n": 2, "q": [[0, 1], [1, 0]', "line"),
    ],
)
def test_malformed_input(tmp_path, capsys, doc, needle):
    path = tmp_path / "bad.json"
    path.write_text(doc)
    for cmd in ("analyze", "simulate"):
        code, _, err = run(capsys, cmd, path)
        assert code == 2
        assert needle in err


def test_missing_file(capsys):
    assert run(capsys, "analyze", "/nonexistent/chain.json")[0] == 2


def test_numeric_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "reducible.json"
    path.write_text('{"n": 3, "q": [[0, 1, 0], [1, 0, 0], [0, 0, 0]]}')
    code, _, err = run(capsys, "analyze", path, "--non-strict")
    assert code == 3 and "Singular" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "markov_cycles", "cycles", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "theta(1,2) = 1" in proc.stdout
