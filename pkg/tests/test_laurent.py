from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistmoment.errors import OrderError
from twistmoment.laurent import TruncatedLaurent as TL

coef = st.floats(-3, 3, allow_nan=False)
series = st.builds(lambda low, c: TL(low, c), st.integers(-3, 2), st.lists(coef, min_size=6, max_size=6))


@settings(max_examples=100, deadline=None)
@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert ((a + b) + c).allclose(a + (b + c), atol=1e-9)
    assert (a * b).allclose(b * a, atol=1e-9)
    assert ((a * b) * c).allclose(a * (b * c), rtol=1e-9, atol=1e-7)
    assert (a * (b + c)).allclose(a * b + a * c, rtol=1e-9, atol=1e-7)


@settings(max_examples=100, deadline=None)
@given(series)
def test_inverse(a):
    if abs(a.coeffs[0]) < 0.1:
        return
    one = a * a.invert()
    assert one.allclose(TL.constant(1.0, one.order), atol=1e-7)


def test_known_residues():
    s = TL.monomial(1)
    assert (TL.monomial(-1) * s).allclose(TL.constant(1.0, 8))
    g0, g1 = 0.57, -0.07
    f = (TL.taylor([0, g0, g1, 0, 0, 0]) * TL.monomial(-2, 6))
    assert f.residue() == pytest.approx(g0)
    e = TL.exp_poly(1.0, 2, 8) * TL.monomial(-3, 8)
    assert e.residue() == pytest.approx(1.0)


def test_evaluation_and_derivative():
    f = TL.exp_poly(1.0, 1, 16)
    assert abs(f(0.1) - math.exp(0.1)) < 1e-15
    assert f.derivative().allclose(f, atol=1e-12)


def test_unknown_coefficient_raises():
    f = TL.taylor([1.0, 2.0])
    with pytest.raises(OrderError):
        f.coefficient(5)
