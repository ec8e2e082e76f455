from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import special

from twistmoment import lvalue
from twistmoment.arith import twist_member
from twistmoment.errors import TableTooSmall

# L'(1/2, f x chi_8d) frozen after the series and contour routes agreed to 5e-15
DERIVATIVES = {
    1: 6.125262220307137,
    3: 5.1187596836866165,
    5: 7.05871557431151,
    7: 4.3908948514491195,
    11: 13.14348265745665,
    13: 4.590593621381857,
    997: 4.947559950392995,
}


def direct_I(table, d, alpha, terms=50):
    q = 8 * d / (2 * math.pi)
    n = np.arange(1, terms + 1)
    chi = twist_member(d).char(n).astype(float)
    x = n / q
    a = 9 + alpha
    return math.sqrt(q) * math.fsum(table.lambdas[1 : terms + 1] * chi / np.sqrt(n) * x ** (-alpha)
                                    * special.gammaincc(a, x) * special.gamma(a))


def test_I_alpha_against_short_sum(small_table):
    v, tail, n0 = lvalue.I_alpha(small_table, 1, 0.1, 1e-14)
    assert abs(v - direct_I(small_table, 1, 0.1)) / abs(v) < 1e-11
    assert tail <= 1e-14 * max(1.0, abs(v))
    assert n0 == lvalue.afe_cutoff(1, 18, 1e-14)


def test_completed_value_odd(small_table):
    for d in (1, 3, 5):
        for al in (0.05, 0.2, 0.45):
            a = lvalue.completed_lambda(small_table, d, al).value
            b = lvalue.completed_lambda(small_table, d, -al).value
            assert a == -b
        assert lvalue.completed_lambda(small_table, d, 0.0).value == 0.0


def test_truncation_bound_decreasing(small_table):
    bounds = [lvalue.tail_bound_I(13, 18, 0.1, n) for n in (200, 400, 800, 1600)]
    assert all(b > 0 for b in bounds)
    assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))


@pytest.mark.parametrize("d", sorted(DERIVATIVES))
def test_derivative_golden(table, d):
    assert lvalue.derivative_central(table, d).value == pytest.approx(DERIVATIVES[d], rel=1e-12)


@pytest.mark.parametrize("d", [1, 3, 13])
def test_derivative_two_routes(table, d):
    s = lvalue.derivative_central(table, d, 1e-13)
    c = lvalue.derivative_contour(table, d, 0.25, 1e-13)
    assert abs(s.value - c.value) / abs(s.value) < 1e-8
    assert s.method == "series" and c.method == "contour"


def test_grid_kernel_matches_exact(table):
    for d in (5, 101, 997):
        e = lvalue.derivative_central(table, d, kernel="exact").value
        g = lvalue.derivative_central(table, d, kernel="grid").value
        assert abs(e - g) / abs(e) < 1e-8


def test_table_too_small(small_table):
    with pytest.raises(TableTooSmall):
        lvalue.derivative_central(small_table.truncated(100), 997)


def test_blocked_sum_deterministic():
    rng = np.random.default_rng(0)
    v = rng.normal(size=100_003) * 1e6
    a = lvalue._blocked_sum(v)
    assert a == lvalue._blocked_sum(v.copy())
    assert abs(a - math.fsum(v)) < 1e-6
