from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from twistmoment import harness
from twistmoment.config import RunConfig, load_config, parse_config
from twistmoment.errors import DomainError


def test_parse_config():
    cfg = parse_config("""
        # precision knobs
        target_eps = 1e-10
        prime_cutoff = 2e4   # scientific notation for ints
        kernel = exact
        workers = 3
    """)
    assert cfg.target_eps == 1e-10 and cfg.prime_cutoff == 20000 and cfg.kernel == "exact" and cfg.workers == 3
    assert cfg.weight == 18
    with pytest.raises(DomainError):
        parse_config("bogus = 1")
    with pytest.raises(DomainError):
        parse_config("workers")
    with pytest.raises(DomainError):
        parse_config("workers = many")


def test_load_config(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("smoothing = 2500\n")
    assert load_config(p).smoothing == 2500.0
    assert load_config(None) == RunConfig()


def test_audit_indices():
    assert harness.audit_indices(0, 0.01) == []
    assert harness.audit_indices(5, 0.01) == [0]
    assert harness.audit_indices(250, 0.01) == [0, 100, 200]


def test_fit_recovers_synthetic_coefficients():
    X = np.geomspace(1e3, 1e6, 8)
    L = np.log(X)
    true = (0.3, -1.2, 2.5, 0.7)
    S = X * (true[0] * L**3 + true[1] * L**2 + true[2] * L + true[3])
    fit = harness.fit_log_polynomial(X, S)
    assert np.allclose(fit, true, rtol=1e-6)
    assert harness.fit_log_polynomial(X[:3], S[:3]) is None


def test_trend_steps():
    rows = [harness.MomentRow(1, 1, 1, 1, r) for r in (1.5, 1.3, 1.35, 0.9, 1.05)]
    assert harness.trend_steps(rows) == [True, False, True, True]


def test_geometric_steps():
    assert harness.geometric_steps(1000, 40000, 6)[0] == 1000.0
    assert harness.geometric_steps(1000, 40000, 6)[-1] == 40000.0


@pytest.fixture(scope="module")
def session(table):
    return harness.Session(RunConfig(), table)


def test_moment_row(session):
    row = harness.empirical_moment(session, 1000.0)
    assert row.family_size == 51
    assert row.S_emp == pytest.approx(78.78828043588872, rel=1e-10)
    assert 0.2 < row.ratio < 5
    assert row.audit_max_rel_err < 1e-8
    assert row.audited == [session_family_first(1000.0)]


def session_family_first(X):
    from twistmoment.arith import TwistFamily

    return TwistFamily.for_scale(X).ds[0]


def test_sweep_report_deterministic(session, tmp_path):
    a = harness.sweep(session, [1000.0, 1200.0])
    b = harness.sweep(session, [1000.0, 1200.0])
    assert a.csv_text() == b.csv_text()
    assert a.json_text() == b.json_text()
    assert a.csv_text().splitlines()[0] == ",".join(harness.CSV_COLUMNS)
    assert a.fit is None and a.notice
    written = harness.write_report(a, tmp_path / "m.csv", None, tmp_path / "fig")
    names = sorted(p.name for p in written)
    assert names == ["m.csv", "m.json", "m_normalized.png", "m_ratio.png"]
    with pytest.raises(DomainError):
        harness.sweep(session, [2000.0, 1000.0])


def test_worker_pool_matches_serial(table):
    ds = [1, 3, 5, 7, 11, 13, 15, 17]
    serial = harness.compute_derivatives(harness.Session(RunConfig(chunk_size=3), table), ds)
    pooled = harness.compute_derivatives(harness.Session(RunConfig(chunk_size=3, workers=2), table), ds)
    assert (serial == pooled).all()


def test_shifted_domain(session):
    with pytest.raises(DomainError):
        harness.shifted_empirical_moment(session, 2000, 0.1, 0.01)
    with pytest.raises(DomainError):
        harness.shifted_empirical_moment(session, 2000, 0.02, -0.02)
