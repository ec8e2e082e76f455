from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistmoment.arith import (TwistFamily, character_table, factorize, is_squarefree, jacobi, jacobi_array,
                               kronecker, mobius, squarefree_odd_in, tau, totient, twist_member)
from twistmoment.errors import DomainError


def legendre_euler(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker_naive(a: int, n: int) -> int:
    """Kronecker symbol as a product of Legendre symbols over the factorization of n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        out = -1 if a < 0 else 1
    for p, e in factorize(n).items() if n > 1 else []:
        if p == 2:
            v = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        else:
            v = legendre_euler(a, p)
        out *= v**e
    return out


def test_spot_values():
    assert kronecker(40, 3) == 1
    assert kronecker(8, 3) == -1
    assert kronecker(8, 3) == legendre_euler(8, 3)
    assert all(kronecker(a, 1) == 1 for a in range(-5, 6))
    assert totient(9) == 6
    assert tau(12) == 6
    assert mobius(30) == -1


def test_squarefree_odd_examples():
    assert squarefree_odd_in(0, 10) == [1, 3, 5, 7]
    assert squarefree_odd_in(24, 28) == []


def test_squarefree_count_against_trial_division():
    hi = 20_000
    brute = [d for d in range(1, hi, 2) if all(d % (p * p) for p in range(3, math.isqrt(d) + 1, 2))]
    assert squarefree_odd_in(0, hi) == brute


@settings(max_examples=300, deadline=None)
@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@settings(max_examples=300, deadline=None)
@given(st.integers(-500, 500), st.integers(1, 500), st.integers(1, 500))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_against_naive_on_random_triples():
    rng = np.random.default_rng(11)
    for a, n in zip(rng.integers(-10**6, 10**6, 10_000), rng.integers(1, 10**6, 10_000)):
        assert kronecker(int(a), int(n)) == kronecker_naive(int(a), int(n))


def test_quadratic_reciprocity():
    rng = np.random.default_rng(12)
    done = 0
    while done < 1000:
        m, n = (int(v) * 2 + 1 for v in rng.integers(1, 50_000, 2))
        if math.gcd(m, n) != 1:
            continue
        sign = -1 if ((m - 1) // 2) * ((n - 1) // 2) % 2 else 1
        assert jacobi(m, n) * jacobi(n, m) == sign
        done += 1


def test_jacobi_array_matches_scalar():
    n = 105
    a = np.arange(-300, 300)
    assert list(jacobi_array(a, n)) == [jacobi(int(x), n) for x in a]


@pytest.mark.parametrize("d", [1, 3, 5, 7, 15, 105, 997])
def test_character_zero_iff_not_coprime(d):
    member = twist_member(d)
    n = np.arange(1, 40 * d)
    chi = member.char(n)
    coprime = np.gcd(n, 8 * d) == 1
    assert np.all((chi == 0) == ~coprime)
    # agrees with the Kronecker symbol
    assert all(int(chi[i]) == kronecker(8 * d, int(k)) for i, k in enumerate(n[:500]))


def test_character_table_rejects_bad_disc():
    with pytest.raises(DomainError):
        character_table(16)


def test_family_members():
    fam = TwistFamily.for_scale(2000)
    assert fam.ds == squarefree_odd_in(250, 500)
    for d in fam.ds:
        assert d % 2 == 1 and is_squarefree(d) and 2000 < 8 * d < 4000
    with pytest.raises(DomainError):
        twist_member(9)
