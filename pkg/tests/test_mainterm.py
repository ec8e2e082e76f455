from __future__ import annotations

import math

import numpy as np
import pytest

from twistmoment import mainterm
from twistmoment.errors import DomainError, PoleError

# C_3..C_0 from the Laurent route (Cauchy route agrees to 1e-12)
C_GOLDEN = (17858.44165240344, 322656.4069070548, 1503771.3036701826, 744007.5940510903)
T00 = 53575.324957210316


@pytest.fixture(scope="module")
def ev(table):
    return mainterm.MainTermEvaluator(table, 100_000, 1e4)


@pytest.fixture(scope="module")
def series_C(ev):
    return mainterm.extract_C(ev)


def test_T_at_origin(ev):
    assert complex(ev.T(0.0, 0.0)).real == pytest.approx(T00, rel=1e-12)


def test_T_symmetric(ev):
    a = complex(ev.T(0.05, 0.02))
    b = complex(ev.T(0.02, 0.05))
    assert a == pytest.approx(b, rel=1e-12)


def test_domain_errors(ev):
    with pytest.raises(PoleError):
        ev.M(0.1, -0.1, 1000.0)
    with pytest.raises(DomainError):
        ev.T(0.4, 0.0)
    with pytest.raises(DomainError):
        mainterm.shifted_main_combination(ev, 0.0, 0.01, 1000)
    with pytest.raises(PoleError):
        mainterm.shifted_main_combination(ev, 0.02, 0.02, 1000)


def test_taylor_stable_across_radii(ev):
    # only coefficients used by the residue: k <= 4 in s, l <= 1 in the second shift
    a = mainterm.T_taylor(ev, (4, 1), 0.05, 32)
    b = mainterm.T_taylor(ev, (4, 1), 0.15, 32)
    assert np.max(np.abs(a - b) / np.abs(b).max()) < 1e-8


def test_C_golden(series_C):
    for got, want in zip(series_C.C, C_GOLDEN):
        assert got == pytest.approx(want, rel=1e-10)


def test_C_two_routes(ev, series_C):
    cauchy = mainterm.extract_C_cauchy(ev)
    for a, b in zip(series_C.C, cauchy.C):
        assert abs(a - b) / abs(a) < 1e-8


def test_residue_polynomial(ev, series_C):
    for X in (1e2, 1e4):
        num = mainterm.residue_numeric(ev, math.log(X))[0].real
        assert num == pytest.approx(mainterm.residue_polynomial(series_C.C, X), rel=1e-8)


def test_closed_form_c3(ev, series_C):
    tc = mainterm.theorem_coefficients(ev, series_C)
    assert tc.relative_gap < 1e-6
    assert tc.c3 == pytest.approx(4 / math.factorial(8) ** 2 * C_GOLDEN[0], rel=1e-10)
    X = 5000.0
    L = math.log(X)
    assert mainterm.main_prediction(tc, X) == pytest.approx(X * L * ((tc.c3 * L + tc.c2) * L + tc.c1), rel=1e-15)


def test_shifted_combination_small_shift_limit(ev, series_C):
    # F(a,b)/(4ab) tends to the residue as the shifts shrink
    a, b, X = 1e-3, 2e-3, 2000.0
    F = mainterm.shifted_main_combination(ev, a, b, X)
    R = mainterm.residue_polynomial(series_C.C, X)
    assert abs(F / (4 * a * b) - R) / R < 1e-3
