from __future__ import annotations

import math
from fractions import Fraction

import pytest

from twistmoment import eigenform
from twistmoment.eigenform import EigenformTable, build_table, cache_path, load_table
from twistmoment.errors import DomainError, ResourceError, WeightNotAvailable
from twistmoment.eulerprod import satake
from twistmoment.verify import deligne_violations, lambda_rounding_error, multiplicativity_failures


def test_leading_coefficients(small_table):
    assert small_table.a(1) == 1
    assert small_table.a(2) == -528
    assert small_table.a(4) == 147712


def test_three_routes_agree():
    n = 60
    fast = eigenform.eigenform_series(18, n)
    slow = eigenform.eigenform_series(18, n, mul=eigenform.series_mul_naive)
    prod = eigenform.series_mul_naive(eigenform.delta_product_formula(n), eigenform.eisenstein(6, n), n)
    assert fast == slow == prod


def test_delta_known_values():
    d = eigenform.delta_series(6)
    assert d[1:6] == [1, -24, 252, -1472, 4830]


def test_series_mul_signed():
    a = [3, -5, 0, 7]
    b = [-2, 4, 1, -9]
    assert eigenform.series_mul(a, b, 4) == eigenform.series_mul_naive(a, b, 4)


def test_multiplicativity_and_deligne(small_table):
    assert multiplicativity_failures(small_table, small_table.limit) == 0
    assert deligne_violations(small_table, small_table.limit) == 0.0


def test_lambda_precision(small_table):
    assert lambda_rounding_error(small_table, range(1, small_table.limit + 1)) <= 4.0


def test_lambda_prime_power(small_table):
    t = small_table
    # recursion against the table where the table reaches
    for p, e in [(2, 1), (2, 5), (3, 6), (7, 4), (53, 2)]:
        assert t.lambda_prime_power(p, e) == pytest.approx(t.lam(p**e), rel=1e-12, abs=1e-13)
    # large exponents stay bounded by e+1
    for p in (2, 3, 5):
        assert abs(t.lambda_prime_power(p, 60)) <= 61
    with pytest.raises(DomainError):
        t.lambda_prime_power(4, 2)


def test_satake_unit_modulus(small_table):
    for p in (2, 3, 5, 7, 11, 97, 997, 2999):
        sp = satake(small_table, p)
        assert abs(abs(sp.alpha_p) - 1) < 1e-10
        assert abs(sp.alpha_p * sp.beta_p - 1) < 1e-12
        assert abs(sp.alpha_p + sp.beta_p - small_table.lam(p)) < 1e-12


def test_round_trip(tmp_path, small_table):
    path = tmp_path / "c.bin"
    small_table.write(path)
    back = EigenformTable.read(path)
    assert back.coeffs == small_table.coeffs
    assert (back.lambdas == small_table.lambdas).all()


def test_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("TWISTMOMENT_CACHE", str(tmp_path))
    t = load_table(18, 50)
    assert cache_path(18, 50).parent == tmp_path
    assert cache_path(18, 50).exists()
    assert load_table(18, 20).limit >= 20 and t.a(2) == -528


def test_errors():
    with pytest.raises(WeightNotAvailable):
        build_table(14, 10)
    with pytest.raises(ResourceError):
        build_table(18, 10**9)
    t = build_table(18, 10)
    with pytest.raises(IndexError):
        t.a(11)


def test_lambda_matches_exact_fraction(small_table):
    n = 2999
    exact = Fraction(small_table.a(n) ** 2, n**17)
    assert small_table.lam(n) ** 2 == pytest.approx(float(exact), rel=1e-15)
    assert math.copysign(1, small_table.lam(n)) == math.copysign(1, small_table.a(n))
