"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""

from __future__ import annotations

import subprocess
import sys
import warnings

import numpy as np
import pytest

from conftest import record_acceptance
from twistmoment import eulerprod, gausspoisson, harness, lvalue, mainterm, verify
from twistmoment.arith import squarefree_odd_in
from twistmoment.config import RunConfig

SWEEP_X = (1e3, 2e3, 5e3, 1e4, 2e4)


def test_criterion_1_eigenform(table):
    rows = verify.eigenform_checks(table, 100_000)
    ok = all(r.passed for r in rows)
    worst = {r.name: r.error for r in rows}
    record_acceptance(1, ok, f"N=1e5: multiplicativity failures={worst['multiplicativity + Hecke, n <= 100000']:.0f}, "
                             f"Deligne excess={worst['Deligne |lambda(n)| <= tau(n), n <= 100000']:.1e}, a(2), a(4) by three routes")
    assert ok, [r.line() for r in rows if not r.passed]


def test_criterion_2_kernel_identity():
    errs = verify.kernel_identity_errors()
    worst = max(e for *_, e in errs)
    ok = len(errs) == 20 and worst <= 1e-9
    record_acceptance(2, ok, f"{len(errs)}-point grid, max rel err {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_3_dual_route(table):
    rng = np.random.default_rng(2024)
    pool = squarefree_odd_in(0, 1000)
    ds = list(verify.DUAL_ROUTE_DS) + sorted(int(d) for d in rng.choice(pool, 50, replace=False))
    route = max(verify.dual_route_error(table, d) for d in ds)
    line_spread = 0.0
    for d in (1, 13, 997):
        vals = [lvalue.derivative_contour(table, d, c, 1e-13).value for c in verify.CONTOUR_LINES]
        line_spread = max(line_spread, (max(vals) - min(vals)) / abs(vals[1]))
    ok = route <= 1e-8 and line_spread <= 1e-8
    record_acceptance(3, ok, f"{len(ds)} twists, series vs contour {route:.2e}; c in {{0.15,0.25,0.35}} spread {line_spread:.2e}")
    assert ok


def test_criterion_4_gauss_poisson():
    g0 = verify.gauss_zero_failures(10_000)
    residuals = verify.poisson_grid()
    worst = max(r.residual for r in residuals)
    ok = g0 <= 1e-9 and worst <= 1e-8
    record_acceptance(4, ok, f"G_0 max deviation {g0:.1e} (odd n <= 1e4); Poisson residual max {worst:.2e} over 18 cases")
    assert ok


def test_criterion_5_diagonal_identity(table):
    a = eulerprod.verify_diagonal_identity(table, 1.0, 1.0, 100_000)
    b = eulerprod.verify_diagonal_identity(table, 1.0, 0.6, 100_000, second_cutoff=table.limit)
    residual_ok = a.residual <= 1e-4 and b.residual <= 1e-4
    certified = a.certified_tail <= 1e-4 and b.certified_tail <= 1e-4
    ok = residual_ok and certified
    record_acceptance(5, ok, f"(1,1): residual {a.residual:.1e}, certified tail {a.certified_tail:.1e}; "
                             f"(1,0.6): residual {b.residual:.1e}, certified tail {b.certified_tail:.1e}")
    assert residual_ok
    assert certified, "certified truncation bound at (1, 0.6) exceeds 1e-4"


def test_criterion_6_coefficients(table):
    ev = mainterm.MainTermEvaluator(table, 100_000, 1e4)
    s = mainterm.extract_C(ev)
    c = mainterm.extract_C_cauchy(ev)
    route = max(abs(x - y) / abs(x) for x, y in zip(s.C, c.C))
    tc = mainterm.theorem_coefficients(ev, s)
    ok = route <= 1e-8 and tc.relative_gap <= 1e-6
    record_acceptance(6, ok, f"C_i routes {route:.1e}; c_3 vs closed form {tc.relative_gap:.1e}")
    assert ok


def test_criterion_7_shifted(table):
    session = harness.Session(RunConfig(), table)
    row = harness.shifted_empirical_moment(session, 2000.0, 0.03, 0.017)
    neg, _ = harness.shifted_lhs(session, 2000.0, 0.03, -0.017)
    anti = neg == -row.LHS
    ok = 0.3 <= row.ratio <= 3.0 and anti
    record_acceptance(7, ok, f"X=2000 family={row.family_size}: LHS/RHS = {row.ratio:.4f}; antisymmetry exact: {anti}")
    assert ok


def test_criterion_8_moment_sweep(table):
    session = harness.Session(RunConfig(), table)
    report = harness.sweep(session, SWEEP_X)
    ratios = [r.ratio for r in report.rows]
    band = all(0.2 <= r <= 5.0 for r in ratios)
    good = sum(report.trend)
    if good < len(report.trend):
        warnings.warn(f"|ratio - 1| increased on {len(report.trend) - good} of {len(report.trend)} steps")
    ok = band and good >= 3
    record_acceptance(8, ok, "ratios " + ", ".join(f"{r:.4f}" for r in ratios) + f"; trend {good}/4 steps")
    assert band
    assert good >= 3


def _cli(*args) -> bytes:
    return subprocess.run([sys.executable, "-m", "twistmoment", *args], check=False,
                          capture_output=True).stdout


def test_criterion_9_determinism(tmp_path):
    v1 = _cli("verify", "--suite", "all")
    v2 = _cli("verify", "--suite", "all")
    reports = []
    for run in ("a", "b"):
        out = tmp_path / run / "sweep.csv"
        subprocess.run([sys.executable, "-m", "twistmoment", "moment", "--x-values", "1000", "1500", "2000", "2500",
                        "--out", str(out), "--figures", str(tmp_path / run)], check=True, capture_output=True)
        reports.append(b"".join((out.parent / n).read_bytes()
                                for n in ("sweep.csv", "sweep.json", "sweep_normalized.png", "sweep_ratio.png")))
    ok = v1 == v2 and b"0 failed" in v1 and reports[0] == reports[1]
    record_acceptance(9, ok, f"verify --suite all identical: {v1 == v2}; sweep CSV/JSON/PNG identical: {reports[0] == reports[1]}")
    assert ok
