from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from twistmoment import specfun
from twistmoment.errors import DomainError, PoleError
from twistmoment.verify import gamma_product_limit, kernel_identity_errors, zeta_eta_route

# Phi~(1) by adaptive quadrature at two tolerances (frozen)
PHI_TILDE_1 = 0.007029858406609656


def test_omega_closed_forms():
    assert specfun.omega(0.0, 18, 1e-12) == pytest.approx(40320.0, rel=1e-12)
    x = 2 * math.pi
    ref = 40320 * math.exp(-x) * math.fsum(x**k / math.factorial(k) for k in range(9))
    assert specfun.omega(0.0, 18, 1.0) == pytest.approx(ref, rel=1e-14)


def test_omega_against_contour():
    v = complex(specfun.omega(0.1, 18, 0.5))
    ref = specfun.omega_contour(0.1, 18, 0.5)
    assert abs(v - ref) / abs(ref) < 1e-10
    assert max(e for *_, e in kernel_identity_errors()) < 1e-9


def test_omega_decay_envelope():
    for xi in (18.0, 25.0, 40.0):
        v = specfun.omega(0.0, 18, xi)
        assert 0 < v <= math.exp(-2 * math.pi * xi) * (2 * math.pi * xi) ** 8 * 2


def test_omega_domain():
    with pytest.raises(DomainError):
        specfun.omega(0.0, 18, 0.0)


def test_incomplete_gamma_recurrence():
    rng = np.random.default_rng(3)
    for a, x in zip(rng.uniform(0.5, 20, 100), rng.uniform(0.01, 50, 100)):
        lhs = specfun.upper_gamma(a + 1, x)
        rhs = a * specfun.upper_gamma(a, x) + math.exp(a * math.log(x) - x)
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_complex_incomplete_gamma_grid():
    a, delta, count = 9.0 + 0.3j, 0.05, 400
    grid = specfun.upper_gamma_grid(a, delta, count)
    x = delta * np.arange(1, count + 1)
    direct = np.asarray(specfun.upper_gamma(np.full(count, a), x))
    assert np.max(np.abs(grid - direct) / np.abs(direct)) < 1e-12


def test_dalpha_routes():
    q = specfun.omega_dalpha(0.0, 18, 1.0)
    fd = specfun.omega_dalpha_fd(0.0, 18, 1.0)
    assert abs(q - fd) / 1e4 < 1e-8
    assert specfun.omega_dalpha(-8.0, 18, 1e-300) == pytest.approx(-specfun.EULER_GAMMA, abs=1e-10)
    assert specfun.omega_dalpha(0.0, 18, 200.0) < 1e-300 or specfun.omega_dalpha(0.0, 18, 200.0) == 0


def test_integer_derivative_kernel():
    x = np.array([0.1, 1.0, 5.0, 30.0])
    exact = np.asarray(specfun.dgamma_upper_integer(9, x))
    quad = np.array([specfun.omega_dalpha(0.0, 18, xi / (2 * math.pi)) for xi in x])
    assert np.max(np.abs(exact - quad) / np.abs(quad)) < 1e-10


def test_kernel_grid_interpolation():
    grid = specfun.kernel_grid(9, 4000)
    rng = np.random.default_rng(5)
    x = np.exp(rng.uniform(math.log(1e-6), math.log(60), 10_000))
    exact = np.asarray(specfun.derivative_kernel(9, x))
    approx = np.asarray(grid.dkernel(x))
    assert np.max(np.abs(approx - exact) / np.abs(exact)) < 1e-9


def test_gamma_complex():
    assert specfun.gamma_complex(9.0) == pytest.approx(40320, rel=1e-14)
    assert specfun.gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    z = 2 + 3j
    assert abs(specfun.gamma_complex(z) - gamma_product_limit(z)) / abs(gamma_product_limit(z)) < 1e-10
    with pytest.raises(PoleError):
        specfun.gamma_complex(-2.0)


def test_zeta_and_stieltjes():
    assert specfun.stieltjes(0) == pytest.approx(0.5772156649015329, abs=1e-9)
    M = 10**5
    k = np.arange(1, M + 1, dtype=float)
    g1 = math.fsum(np.log(k) / k) - math.log(M) ** 2 / 2 - math.log(M) / (2 * M) + (1 - math.log(M)) / (12 * M**2)
    assert specfun.stieltjes(1) == pytest.approx(g1, abs=1e-8)
    # zeta(3/2) by a direct sum with an integral tail
    n = np.arange(1, 10**6, dtype=float)
    N = 1e6
    direct = math.fsum(n**-1.5) + 2 / math.sqrt(N) + 0.5 * N**-1.5
    assert np.real(specfun.zeta_one_plus(0.5)) == pytest.approx(direct, abs=1e-9)
    for s in 0.3 * np.exp(2j * math.pi * np.arange(12) / 12):
        assert abs(specfun.zeta_one_plus(s) - zeta_eta_route(1 + s)) < 1e-9
    with pytest.raises(PoleError):
        specfun.zeta_one_plus(0.0)


def test_mellin_phi():
    f = lambda x: float(specfun.phi(x))
    lo, _ = integrate.quad(f, 1, 2, epsabs=1e-13, epsrel=1e-10)
    hi, _ = integrate.quad(f, 1, 2, epsabs=1e-15, epsrel=1e-13, limit=200)
    assert abs(lo - hi) < 1e-12
    assert specfun.mellin_phi(1.0).real == pytest.approx(hi, rel=1e-12)
    assert specfun.mellin_phi(1.0).real == pytest.approx(PHI_TILDE_1, rel=1e-13)
    a, b = specfun.mellin_phi(1 + 0.3j), specfun.mellin_phi(1 - 0.3j)
    assert abs(a - np.conj(b)) < 1e-16
    assert abs(specfun.mellin_phi(1 + 20j)) <= specfun.mellin_phi(1.0).real
    h = 1e-4
    fd = (specfun.mellin_phi(1 + h) - specfun.mellin_phi(1 - h)) / (2 * h)
    assert abs(fd - specfun.mellin_phi(1.0, 1)) / abs(fd) < 1e-6
