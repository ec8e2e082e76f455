"""Gauss-like sums, the (cos + sin) transform, and a numerical Poisson check.

For odd n and a smooth window F supported in (0, inf),

    sum_{d odd} (d/n) F(d/Z) = Z/(2n) (2/n) sum_k (-1)^k G_k(n) Fv(kZ/2n),

with G_k(n) = ((1-i)/2 + (-1/n)(1+i)/2) sum_{a mod n} (a/n) e(ak/n) and
Fv(y) = int (cos + sin)(2 pi x y) F(x) dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun
from .arith import jacobi, jacobi_array
from .errors import AccuracyError, DomainError

PANEL_NODES = 20


@dataclass(frozen=True)
class Window:
    name: str
    func: Callable
    support: tuple[float, float]


_WINDOWS: dict[str, Window] = {}


def register_window(name: str, func: Callable, support: tuple[float, float]) -> Window:
    w = Window(name, func, (float(support[0]), float(support[1])))
    _WINDOWS[name] = w
    return w


def get_window(window) -> Window:
    if isinstance(window, Window):
        if _WINDOWS.get(window.name) is not window:
            raise DomainError(f"window {window.name!r} is not registered")
        return window
    if window not in _WINDOWS:
        raise DomainError(f"window {window!r} is not registered")
    return _WINDOWS[window]


PHI_WINDOW = register_window("phi", specfun.phi, specfun.PHI_SUPPORT)


# --- Gauss-like sums -------------------------------------------------------------


def _check_modulus(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise DomainError(f"Gauss-like sum needs odd n >= 1, got {n}")


def gauss_prefactor(n: int) -> complex:
    return (1 - 1j) / 2 + jacobi(-1, n) * (1 + 1j) / 2


def gauss_sums(n: int) -> np.ndarray:
    """G_k(n) for k = 0..n-1 (the sum is periodic in k modulo n)."""
    _check_modulus(n)
    a = np.arange(n)
    chi = jacobi_array(a, n).astype(float)
    # sum_a chi(a) e(ak/n) for all k at once is a length-n DFT
    return gauss_prefactor(n) * np.conj(np.fft.fft(chi)) if n > 1 else np.array([1.0 + 0j])


def gauss_sum(k: int, n: int) -> complex:
    """G_k(n) by direct O(n) summation."""
    _check_modulus(n)
    a = np.arange(n)
    chi = jacobi_array(a, n).astype(float)
    phase = np.exp(2j * math.pi * ((a * (k % n)) % n) / n)
    return complex(gauss_prefactor(n) * np.sum(chi * phase))


@dataclass(frozen=True)
class GaussSum:
    k: int
    n: int
    value: complex

    @classmethod
    def compute(cls, k: int, n: int) -> "GaussSum":
        return cls(k, n, gauss_sum(k, n))


# --- the transform ---------------------------------------------------------------


def _panel_rule(support, panels: int):
    u, w = np.polynomial.legendre.leggauss(PANEL_NODES)
    a, b = support
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * u[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return x, wt


def window_l1(window) -> float:
    win = get_window(window) if not isinstance(window, Window) else window
    x, wt = _panel_rule(win.support, 64)
    return float(np.sum(wt * np.abs(win.func(x))))


def f_check(window, y, rtol: float = 1e-12, max_panels: int = 1 << 16):
    """Fv(y) = int (cos + sin)(2 pi x y) F(x) dx by Gauss-Legendre panels.

    Panels are doubled until two successive rules agree to ``rtol`` relative to
    int |F|; the oscillation count sets the starting resolution.
    """
    win = get_window(window)
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    scale = window_l1(win)
    out = np.empty(ys.size)
    width = win.support[1] - win.support[0]
    for i, yy in enumerate(ys):
        panels = max(8, int(math.ceil(2 * abs(yy) * width)))
        prev = None
        while True:
            x, wt = _panel_rule(win.support, panels)
            arg = 2 * math.pi * yy * x
            val = math.fsum(wt * (np.cos(arg) + np.sin(arg)) * win.func(x))
            if prev is not None and abs(val - prev) <= rtol * scale:
                break
            if panels > max_panels:
                raise AccuracyError(f"transform at y={yy} did not settle", achieved=abs(val - prev) / scale)
            prev = val
            panels *= 2
        out[i] = val
    return float(out[0]) if np.ndim(y) == 0 else out


def f_check_mellin_barnes(window, y: float, line: float = 0.5, rtol: float = 1e-10) -> float:
    """Second representation of Fv(y) as a contour integral on Re(u) = line.

    (1/2 pi i) int F~(1-u) Gamma(u) (cos + sgn(y) sin)(pi u/2) (2 pi |y|)^-u du,
    with F~ the Mellin transform; the integrand is conjugate-symmetric so the
    line folds onto t >= 0.
    """
    win = get_window(window)
    if y == 0:
        raise DomainError("Mellin-Barnes form needs y != 0")
    sgn = 1.0 if y > 0 else -1.0
    a, b = win.support
    u_gl, w_gl = np.polynomial.legendre.leggauss(512)
    xs = 0.5 * (a + b) + 0.5 * (b - a) * u_gl
    fx = 0.5 * (b - a) * w_gl * win.func(xs)
    lx = np.log(xs)

    # Gamma(u)(cos + sgn sin)(pi u/2) = sum over the two exponentials e^(+-i pi u/2),
    # each combined with log Gamma so the growth of cos and sin never materializes
    c_plus = (1 - 1j * sgn) / 2
    c_minus = (1 + 1j * sgn) / 2
    log_2piy = math.log(2 * math.pi * abs(y))

    def integrand(t: np.ndarray) -> np.ndarray:
        u = line + 1j * t
        mellin = np.exp(-np.outer(u, lx)) @ fx  # F~(1-u) = int F(x) x^-u dx
        lg = specfun._loggamma_shifted(u) - u * log_2piy
        val = mellin * (c_plus * np.exp(lg + 0.5j * math.pi * u) + c_minus * np.exp(lg - 0.5j * math.pi * u))
        return val.real

    gl_u, gl_w = np.polynomial.legendre.leggauss(40)
    total = 0.0
    lo, step = 0.0, 4.0
    while True:
        t = lo + 0.5 * step * (1.0 + gl_u)
        piece = 0.5 * step * float(np.dot(gl_w, integrand(t)))
        total += piece
        lo += step
        if abs(piece) < rtol * abs(total) and lo >= 40:
            break
        if lo > 20000:
            raise AccuracyError("Mellin-Barnes integral did not settle", achieved=abs(piece))
    return total / math.pi


# --- Poisson check ---------------------------------------------------------------


@dataclass
class PoissonResidual:
    n: int
    Z: float
    lhs: float
    rhs: float
    residual: float
    kmax: int


def poisson_lhs(window, n: int, Z: float) -> float:
    win = get_window(window)
    a, b = win.support
    lo = max(1, math.floor(a * Z))
    hi = math.ceil(b * Z)
    d = np.arange(lo | 1, hi + 1, 2)
    chi = jacobi_array(d, n).astype(float) if n > 1 else np.ones(d.size)
    return math.fsum(chi * win.func(d / Z))


def poisson_rhs(window, n: int, Z: float, kmax: int) -> float:
    _check_modulus(n)
    G = gauss_sums(n)
    k = np.arange(-kmax, kmax + 1)
    y = k * Z / (2.0 * n)
    fv = f_check(window, y)
    terms = np.where(k % 2 == 0, 1.0, -1.0) * G[k % n] * fv
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return (Z / (2.0 * n) * jacobi(2, n) * total).real


def verify_poisson(window, n: int, Z: float, kmax: int | None = None,
                   settle: float = 1e-9, k_start: int = 4) -> PoissonResidual:
    """|LHS - RHS| with kmax doubled until the partial RHS moves by less than ``settle``."""
    _check_modulus(n)
    lhs = poisson_lhs(window, n, Z)
    if kmax is not None:
        rhs = poisson_rhs(window, n, Z, kmax)
        return PoissonResidual(n, Z, lhs, rhs, abs(lhs - rhs), kmax)
    k = k_start
    prev = poisson_rhs(window, n, Z, k)
    while True:
        k *= 2
        cur = poisson_rhs(window, n, Z, k)
        if abs(cur - prev) < settle:
            return PoissonResidual(n, Z, lhs, cur, abs(lhs - cur), k)
        if k > 1 << 16:
            raise AccuracyError(f"Poisson series did not settle by k={k}", achieved=abs(cur - prev))
        prev = cur
