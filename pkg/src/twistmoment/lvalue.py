"""Central values of L(s, f x chi_8d) through the approximate functional equation.

For a family member d the completed function satisfies

    Lambda(1/2 + alpha) = I_alpha - I_{-alpha},
    I_alpha = (8d/2pi)^(1/2+alpha) sum_n lambda(n) chi(n) n^(-1/2-alpha) Gamma(alpha + k/2, 2 pi n / 8d),

and the root number is -1, so L(1/2) = 0.  Differentiating at alpha = 0 gives

    L'(1/2) = (2 / Gamma(k/2)) sum_n lambda(n) chi(n) n^(-1/2) W(2 pi n / 8d),
    W(x) = d/da Gamma(a, x) - ln(x) Gamma(a, x)  at a = k/2.

The contour route integrates Lambda(1/2+s) e^(s^2) / s^2 along Re(s) = c instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .arith import TwistMember, twist_member
from .eigenform import EigenformTable
from .errors import AccuracyError, DomainError, TableTooSmall

TWO_PI = 2.0 * math.pi
DEFAULT_EPS = 1e-12


@dataclass
class CompletedValue:
    d: int
    shift: complex
    value: complex
    truncation_bound: float
    terms_used: int


@dataclass
class DerivativeValue:
    d: int
    value: float
    method: str
    truncation_bound: float
    terms_used: int


SUM_BLOCK = 128


def _blocked_sum(v: np.ndarray) -> float:
    n = v.size
    if n <= 4 * SUM_BLOCK:
        return math.fsum(v)
    full = n - n % SUM_BLOCK
    partial = v[:full].reshape(-1, SUM_BLOCK).sum(axis=1)
    return math.fsum(np.concatenate([partial, v[full:]]))


def fsum_complex(v: np.ndarray) -> complex:
    """Compensated sum: pairwise within fixed blocks, exactly rounded across blocks.

    Fixed block boundaries make the result independent of scheduling.
    """
    v = np.asarray(v)
    if np.iscomplexobj(v):
        return complex(_blocked_sum(v.real), _blocked_sum(v.imag))
    return _blocked_sum(v)


def _member(d) -> TwistMember:
    return d if isinstance(d, TwistMember) else twist_member(int(d))


def afe_cutoff(d: int, kappa: int, eps: float = DEFAULT_EPS) -> int:
    """Series length N0 = ceil((8d/2pi)(ln(1/eps) + 4 kappa))."""
    return math.ceil(8 * d / TWO_PI * (math.log(1.0 / eps) + 4 * kappa))


def _gamma_tail(a: float, x0: float, delta: float) -> float:
    """Bound for sum_{n>=0} Gamma(a, x0 + n delta), valid for x0 > a - 1.

    Uses Gamma(a,x) <= x^(a-1) e^-x / (1 - (a-1)/x) and the matching geometric
    decay of consecutive cells.
    """
    if x0 <= a - 1:
        raise AccuracyError("series cut before the kernel decays", achieved=math.inf)
    q = 1.0 - (a - 1.0) / x0
    first = min(float(specfun.upper_gamma(a, x0)), math.exp((a - 1) * math.log(x0) - x0) / q)
    ratio = math.exp(-delta * q)
    return first / (1.0 - ratio)


def tail_bound_I(d: int, kappa: int, alpha: complex, n0: int) -> float:
    """Majorant of the discarded part of I_alpha (tau(n) <= 2 sqrt n)."""
    delta = TWO_PI / (8 * d)
    ra = complex(alpha).real
    a = ra + kappa / 2 + max(0.0, -ra)
    x0 = (n0 + 1) * delta
    scale = (8 * d / TWO_PI) ** 0.5 * x0 ** (-max(0.0, ra))
    return 2.0 * scale * _gamma_tail(a, x0, delta)


def tail_bound_derivative(d: int, kappa: int, n0: int) -> float:
    """Majorant of the discarded part of the L'(1/2) series, via W(x) <= Gamma(a+1, x)/x."""
    delta = TWO_PI / (8 * d)
    x0 = (n0 + 1) * delta
    return 2.0 / math.gamma(kappa / 2) * 2.0 * _gamma_tail(kappa / 2 + 1, x0, delta) / x0


def _weights(table: EigenformTable, member: TwistMember, n0: int) -> np.ndarray:
    if n0 > table.limit:
        raise TableTooSmall(n0, table.limit)
    n = np.arange(1, n0 + 1)
    return table.lambdas[1 : n0 + 1] * member.char(n) / np.sqrt(n)


def I_alpha(table: EigenformTable, d, alpha, target_eps: float = DEFAULT_EPS):
    """Partial sum of I_alpha and a bound for the discarded tail.

    Returns ``(value, tail_bound, n0)``.
    """
    member = _member(d)
    kappa = table.weight
    alpha = complex(alpha) if np.iscomplexobj(np.asarray(alpha)) else float(alpha)
    if abs(np.real(alpha)) >= 0.5:
        raise DomainError("need |Re(alpha)| < 1/2")
    n0 = afe_cutoff(member.d, kappa, target_eps)
    c = _weights(table, member, n0)
    delta = TWO_PI / (8 * member.d)
    x = delta * np.arange(1, n0 + 1)
    a = alpha + kappa / 2
    if isinstance(alpha, complex) and alpha.imag != 0:
        g = specfun.upper_gamma_grid(a, delta, n0)
        value = fsum_complex(c * np.exp(-alpha * np.log(x)) * g)
    elif float(np.real(alpha)) == 0.0 and kappa % 2 == 0:
        value = fsum_complex(c * specfun.upper_gamma_integer(kappa // 2, x))
    else:
        ar = float(np.real(alpha))
        value = fsum_complex(c * np.exp(-ar * np.log(x)) * specfun.upper_gamma(ar + kappa / 2, x))
    value = value * (8 * member.d / TWO_PI) ** 0.5
    return value, tail_bound_I(member.d, kappa, alpha, n0), n0


def completed_lambda(table: EigenformTable, d, alpha, target_eps: float = DEFAULT_EPS) -> CompletedValue:
    """Lambda(1/2 + alpha, f x chi_8d) = I_alpha - I_{-alpha}."""
    member = _member(d)
    if alpha == 0:
        return CompletedValue(member.d, alpha, 0.0, 0.0, 0)
    plus, tp, n0 = I_alpha(table, member, alpha, target_eps)
    minus, tm, _ = I_alpha(table, member, -alpha, target_eps)
    return CompletedValue(member.d, alpha, plus - minus, tp + tm, n0)


def derivative_central(table: EigenformTable, d, target_eps: float = DEFAULT_EPS,
                       kernel: str = "exact", grid_points: int = 4000) -> DerivativeValue:
    """L'(1/2) from the alpha-derivative of I_alpha - I_{-alpha} at alpha = 0."""
    member = _member(d)
    kappa = table.weight
    if kappa % 2:
        raise DomainError("integer kernel branch needs even weight")
    n0 = afe_cutoff(member.d, kappa, target_eps)
    c = _weights(table, member, n0)
    x = (TWO_PI / (8 * member.d)) * np.arange(1, n0 + 1)
    if kernel == "grid":
        w = specfun.kernel_grid(kappa // 2, grid_points).dkernel(x)
    elif kernel == "exact":
        w = specfun.derivative_kernel(kappa // 2, x)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    value = 2.0 / math.gamma(kappa / 2) * fsum_complex(c * w)
    return DerivativeValue(member.d, value, "series", tail_bound_derivative(member.d, kappa, n0), n0)


def contour_nodes(c: float, digits: float = 36.0) -> tuple[float, np.ndarray]:
    """Step and non-negative ordinates for the trapezoid rule on Re(s) = c.

    The pole at s = 0 sits at distance c from the line, so the discretisation
    error is ~exp(-2 pi c / h); the height is cut where e^(c^2 - t^2) < e^-digits.
    """
    h = TWO_PI * c / digits
    t_max = math.sqrt(c * c + digits + 4.0)
    return h, h * np.arange(0, math.ceil(t_max / h) + 1)


class _LineSum:
    """I_{sign*s} for s = c + i j h, j = 0, 1, 2, ..., updated by rotation.

    Every oscillating factor t^(i j h) is the j-th power of a fixed unit
    rotation, so each new ordinate costs complex multiplies only.  The cells
    follow the same Gauss-Legendre layout as specfun.upper_gamma_grid.
    """

    def __init__(self, cw, delta, n0, kappa, c, h, sign, near_cells=32, near_nodes=10):
        self.sign = sign
        self.kappa = kappa
        self.c = c
        self.h = h
        self.delta = delta
        self.n0 = n0
        far_nodes = 6 if delta > 0.02 else 4
        left = delta * np.arange(1, n0 + 1, dtype=float)
        split = min(n0, near_cells)
        sigma = kappa / 2 + sign * c
        self.groups = []
        for lo, hi, q in ((0, split, near_nodes), (split, n0, far_nodes)):
            if hi <= lo:
                continue
            u, w = np.polynomial.legendre.leggauss(q)
            t = left[lo:hi][None, :] + 0.5 * delta * (1.0 + u[:, None])
            lt = np.log(t)
            base = w[:, None] * np.exp((sigma - 1.0) * lt - t)
            rot = np.exp(1j * sign * h * lt)
            self.groups.append((lo, hi, base.astype(complex), rot))
        lx = np.log(left)
        self.weights = cw * np.exp(-sign * c * lx)
        self.xrot = np.exp(-1j * sign * h * lx)
        self.j = 0

    def advance(self) -> complex:
        """Return I at the current ordinate, then step to the next one."""
        cells = np.empty(self.n0, dtype=complex)
        for lo, hi, state, rot in self.groups:
            cells[lo:hi] = state.sum(axis=0)
            state *= rot
        cells *= 0.5 * self.delta
        s = complex(self.c, self.j * self.h)
        a = self.sign * s + self.kappa / 2
        end = specfun._upper_gamma_complex(np.array([a]), np.array([(self.n0 + 1) * self.delta]))[0]
        g = np.cumsum(cells[::-1])[::-1] + end
        value = fsum_complex(self.weights * g)
        self.weights = self.weights * self.xrot
        self.j += 1
        return value


def derivative_contour(table: EigenformTable, d, c: float = 0.25, target_eps: float = DEFAULT_EPS,
                       height_scale: float = 1.0) -> DerivativeValue:
    """L'(1/2) = Gamma(k/2)^-1 (8d/2pi)^-1/2 (2/2 pi i) int_(c) Lambda(1/2+s) e^(s^2) ds/s^2.

    Conjugate symmetry folds the line to t >= 0; the trapezoid rule on
    t = 0, h, 2h, ... is spectrally accurate for this analytic integrand.
    """
    member = _member(d)
    kappa = table.weight
    if not 0 < c < 0.5:
        raise DomainError("contour line must satisfy 0 < c < 1/2")
    h, t = contour_nodes(c)
    if height_scale != 1.0:
        t = h * np.arange(0, math.ceil(height_scale * t[-1] / h) + 1)
    n0 = afe_cutoff(member.d, kappa, target_eps)
    cw = _weights(table, member, n0)
    delta = TWO_PI / (8 * member.d)
    pref = (8 * member.d / TWO_PI) ** 0.5
    plus = _LineSum(cw, delta, n0, kappa, c, h, 1.0)
    minus = _LineSum(cw, delta, n0, kappa, c, h, -1.0)
    vals = np.empty(t.size)
    for j, tj in enumerate(t):
        s = complex(c, tj)
        lam = plus.advance() - minus.advance()
        vals[j] = (pref * lam * np.exp(s * s) / (s * s)).real
    integral = h / math.pi * (0.5 * vals[0] + math.fsum(vals[1:]))
    value = 2.0 * integral / (math.gamma(kappa / 2) * pref)
    if not np.isfinite(value):
        raise AccuracyError("contour quadrature produced a non-finite value")
    # series tails on the line, carried through the quadrature; the height cut
    # leaves e^(c^2 - t_max^2) relative to the integrand scale
    s0 = complex(c, 0.0)
    tail = 2 * tail_bound_I(member.d, kappa, s0, n0) * abs(np.exp(s0 * s0) / (s0 * s0)) * t[-1]
    height = math.exp(c * c - t[-1] ** 2) * float(np.max(np.abs(vals))) * c * c
    bound = 2.0 * (tail * h / math.pi + height) / (math.gamma(kappa / 2) * pref)
    return DerivativeValue(member.d, value, "contour", bound, n0)
