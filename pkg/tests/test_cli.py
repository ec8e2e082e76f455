from __future__ import annotations

import json

from twistmoment.cli import main


def test_lvalue_json(capsys):
    assert main(["lvalue", "--d", "13", "--deriv", "--method", "both", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["relative_difference"] < 1e-8
    assert abs(out["results"][0]["value"] - 4.590593621381857) < 1e-11


def test_lvalue_completed(capsys):
    assert main(["lvalue", "--d", "5", "--alpha", "0.1", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["truncation_bound"] >= 0 and out["terms_used"] > 0


def test_coeffs(tmp_path, capsys):
    out = tmp_path / "c.bin"
    assert main(["coeffs", "--limit", "100", "--out", str(out)]) == 0
    assert out.exists()


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "lvalue"]) == 0
    text = capsys.readouterr().out
    assert "FAIL" not in text and text.strip().endswith("0 failed")


def test_domain_error_exit_code(capsys):
    assert main(["lvalue", "--d", "9"]) == 2
    assert "error" in capsys.readouterr().err
