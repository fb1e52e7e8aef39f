import io
import json
import re
import subprocess
import sys

import pytest

from hatcycle.cli import run
from hatcycle.constructors import chi2_strategy, chi3_strategy
from hatcycle.core import strategy_from_dict, strategy_to_dict


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def chi3_file(tmp_path):
    p = tmp_path / "chi3.json"
    p.write_text(json.dumps(strategy_to_dict(chi3_strategy(5))))
    return str(p)


def test_construct_verify_round_trip(capsys, tmp_path):
    out = tmp_path / "s.json"
    assert call(capsys, "construct", "--n", "9", "--out", str(out))[0] == 0
    assert strategy_from_dict(json.loads(out.read_text())).n == 9
    code, text, _ = call(capsys, "verify", "--strategy", str(out))
    assert code == 0 and json.loads(text)["verdict"] == "winning"


def test_verify_losing_exit_code(capsys, chi3_file):
    code, text, _ = call(capsys, "verify", "--strategy", chi3_file)
    data = json.loads(text)
    assert code == 1
    assert data == {"verdict": "losing", "witness": {"colours": [0, 1, 2, 0, 1]}}


def test_verify_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(strategy_to_dict(chi2_strategy(4)))))
    assert call(capsys, "verify")[0] == 0


def test_bad_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = call(capsys, "verify", "--strategy", str(bad))
    assert code == 2 and "error" in err
    bad.write_text(json.dumps({"n": 3, "rules": [[[0, 0, 0]] * 3] * 2}))
    assert call(capsys, "verify", "--strategy", str(bad))[0] == 2
    assert call(capsys, "construct", "--n", "5")[0] == 2
    assert call(capsys, "construct", "--n", "5", "--family", "chi2")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2


def test_count_and_classify(capsys, chi3_file):
    code, text, _ = call(capsys, "count", "--strategy", chi3_file)
    assert code == 0
    assert json.loads(text) == {"defeat_count": 3, "assignments": 243,
                                "win_probability": "80/81"}
    code, text, _ = call(capsys, "classify", "--strategy", chi3_file)
    data = json.loads(text)
    assert data["balanced"] and data["chi"] == {"per_boundary": [3] * 5, "constant": 3}
    assert data["lemma_violations"] == []


def test_classify_unbalanced(capsys, tmp_path):
    p = tmp_path / "zero.json"
    p.write_text(json.dumps({"n": 4, "rules": [[[0] * 3] * 3] * 4}))
    data = json.loads(call(capsys, "classify", "--strategy", str(p))[1])
    assert not data["balanced"]
    nb = data["not_balanced"]
    assert nb["ell_minus"] + nb["ell_plus"] >= 5


def test_prove_and_budget(capsys, monkeypatch, tmp_path):
    out = tmp_path / "cert.json"
    assert call(capsys, "prove", "--n", "5", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["conclusion"] == "NoWinningStrategy"
    assert call(capsys, "prove", "--n", "6")[0] == 2
    monkeypatch.setenv("HATCYCLE_BUDGET", "10")
    code, text, err = call(capsys, "prove", "--n", "7")
    assert code == 2 and json.loads(text)["conclusion"] == "Inconclusive"
    monkeypatch.setenv("HATCYCLE_BUDGET", "lots")
    assert call(capsys, "prove", "--n", "5")[0] == 2


def test_prove_is_deterministic(capsys):
    first = call(capsys, "prove", "--n", "5")[1]
    second = call(capsys, "prove", "--n", "5")[1]
    strip = lambda t: {k: v for k, v in json.loads(t).items() if k != "method_log"}
    assert strip(first) == strip(second)


def test_general(capsys, tmp_path):
    game = tmp_path / "game.json"
    game.write_text(json.dumps({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]],
                                "heights": {"a": 2, "b": 2}}))
    strat = tmp_path / "strat.json"
    strat.write_text(json.dumps({"guesses": {"a": [0, 1], "b": [1, 0]}}))
    code, text, _ = call(capsys, "general", "--game", str(game), "--strategy", str(strat))
    assert code == 0 and json.loads(text) == {"min_correct": 1, "winning": True}
    strat.write_text(json.dumps({"guesses": {"a": [0], "b": [1, 0]}}))
    assert call(capsys, "general", "--game", str(game), "--strategy", str(strat))[0] == 2


def _dot_edges(text):
    return re.findall(r'(v_\d+_\d) -> (v_\d+_\d) \[color="(\w+)"', text)


def test_export_dot_chi3(capsys, chi3_file):
    code, text, _ = call(capsys, "export-dot", "--strategy", chi3_file)
    assert code == 0 and text.startswith("digraph")
    edges = _dot_edges(text)
    assert len(edges) == 45
    assert len(set(re.findall(r"(v_\d+_\d) \[label", text))) == 15
    for colour in ("gold", "red", "blue"):
        assert sum(e[2] == colour for e in edges) == 15


def test_export_dot_chi2(capsys, tmp_path):
    p = tmp_path / "chi2.json"
    p.write_text(json.dumps(strategy_to_dict(chi2_strategy(8))))
    edges = _dot_edges(call(capsys, "export-dot", "--strategy", str(p))[1])
    for k in range(8):
        here = [e[2] for e in edges if e[0].startswith(f"v_{k}_")]
        assert (here.count("gold"), here.count("red"), here.count("blue")) == (2, 2, 5)


def test_export_dot_rejects_unbalanced(capsys, tmp_path):
    p = tmp_path / "zero.json"
    p.write_text(json.dumps({"n": 3, "rules": [[[0] * 3] * 3] * 3}))
    assert call(capsys, "export-dot", "--strategy", str(p))[0] == 2


def test_console_script_pipeline():
    made = subprocess.run([sys.executable, "-m", "hatcycle", "construct", "--n", "6"],
                          capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "hatcycle", "verify"], input=made.stdout,
                         capture_output=True, text=True)
    assert res.returncode == 0
