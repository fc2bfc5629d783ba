from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from modpchar.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_chi_json():
    code, text = call("chi", "--type", "A1", "--gamma", "10")
    data = json.loads(text)
    assert code == 0 and len(data["character"]["terms"]) == 11
    assert any("KL variable" in a for a in data["assumptions"])


def test_worked_example_command():
    code, text = call("paper-example")
    data = json.loads(text)
    assert code == 0
    assert data["ext"]["4"] == {"1": 1, "2": 1}
    assert data["ext"]["0"] == {"2": 1, "3": 1}
    assert data["peel_reproduces_resolution"]
    assert "KL-good p^r" in data["assumptions"]
    code, text = call("paper-example", "--format", "text")
    assert "parity violations: (0, 2), (4, 1)" in text


def test_jantzen_decompose():
    code, text = call("jantzen", "--type", "A1", "--p", "3", "--gamma", "10", "--decompose")
    data = json.loads(text)
    assert {tuple(t["wt"]): t["coeff"] for t in data["weyl_basis"]} == {(0,): 1, (4,): -1, (6,): 2}
    code, text = call("jantzen", "--p", "3", "--gamma", "10", "--r", "2", "--format", "csv")
    assert text.splitlines() == ["mu,coeff", "6,1"]


def test_redchar_and_predict():
    code, text = call("redchar", "--gamma", "10", "--p", "3", "--r", "2", "--format", "csv")
    assert code == 0 and text.splitlines()[1:] == ["10,1", "8,1", "-8,1", "-10,1"]
    code, text = call("predict", "homs", "--gamma", "6", "--p", "3", "--r", "1")
    assert json.loads(text)["predictions"][0]["target"] == [10]
    code, text = call("bounds", "ext", "--gamma", "4", "--gamma2", "10", "--p", "3", "--r", "1")
    assert json.loads(text)["poly"] == [{"exp": 2, "coeff": 1}]


def test_group_commands():
    code, text = call("canon", "--gamma", "10", "--p", "3")
    data = json.loads(text)
    assert data["lambda"] == [-2] and data["length"] == 4
    code, text = call("orbit", "--lam=-2", "--l", "3", "--bound", "12", "--format", "csv")
    assert text.splitlines() == ["wt,length", "0,1", "4,2", "6,3", "10,4", "12,5"]
    code, text = call("facet", "--gamma", "8", "--l", "3")
    assert json.loads(text)["walls"] == []
    code, text = call("kl", "--type", "A2", "--y", "0,1,0", "--l", "3")
    assert json.loads(text)["poly"] == [{"exp": 0, "coeff": 1}]
    code, text = call("pkl", "--type", "A2", "--J", "0", "--y", "1", "--w", "1,0,2,1", "--l", "3")
    assert code == 0 and json.loads(text)["value_at_minus_one"] == 1
    code, text = call("ext-series", "--y", "1,0", "--w", "1,0,1,0", "--l", "3")
    assert json.loads(text)["poly"] == [{"exp": 2, "coeff": 1}]
    code, text = call("decompose", "--gamma", "10", "--p", "3", "--quantum", "--r", "2", "--format", "csv")
    assert text.splitlines() == ["mu,coeff", "6,1", "10,1"]


def test_scans_stream_in_order():
    code, text = call("scan", "jantzen-identity", "--type", "A2", "--p", "3", "--max", "8",
                      "--threads", "4")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "gamma,ok,max_abs_coeff"
    code1, text1 = call("scan", "jantzen-identity", "--type", "A2", "--p", "3", "--max", "8")
    assert text1 == text
    code, text = call("scan", "non-domination", "--p", "3", "--max", "20", "--first")
    last = text.splitlines()[-1]
    assert last.startswith("9,false,")


def test_verify_a1():
    code, text = call("verify-a1", "--p", "3", "--max", "20", "--format", "text")
    assert code == 0 and "FAIL" not in text


def test_exit_codes(tmp_path):
    assert call("chi", "--gamma", "1", "--p", "4")[0] == 2
    assert call("chi", "--type", "G2", "--p", "3", "--gamma", "0,0")[0] == 2
    assert call("chi", "--type", "Q9", "--gamma", "0")[0] == 2
    assert call("bogus")[0] == 2
    assert call("kl", "--y", "0,1,0,1,0,1", "--max-length", "3")[0] == 3
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 5, "format": "csv"}))
    code, text = call("redchar", "--gamma", "4", "--config", str(cfg))
    assert code == 0 and text.startswith("wt,mult")
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert call("chi", "--gamma", "1", "--config", str(cfg))[0] == 2


def test_deterministic_output():
    a = call("paper-example")[1]
    b = call("paper-example")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modpchar", "chi", "--gamma", "2", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("chi(2) =")
