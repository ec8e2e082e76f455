"""The diagonal main term M(alpha, beta) and the coefficients of the moment asymptotic.

    M(a, b) = X^(1+a+b) zeta(1+a+b) T(a, b),
    T(a, b) = (2 pi)^(-a-b) / (2 pi^2) L(1+2a) L(1+2b) L(1+a+b) Z_1(a, b)
              Gamma(a + k/2) Gamma(b + k/2) Phi~(1+a+b),

with L = L(., sym^2 f).  The second moment of L'(1/2) is governed by
Res_{s=0} M^(0,1)(s, 0) e^(s^2)/s^2 = X (C_3 L^3 + C_2 L^2 + C_1 L + C_0), L = log X,
and the asymptotic's coefficients are c_i = 4 Gamma(k/2)^-2 C_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .eigenform import EigenformTable
from .errors import DomainError, OrderError, PoleError
from .eulerprod import DEFAULT_PRIME_CUTOFF, DEFAULT_SMOOTHING, Sym2Evaluator, Z1_value
from .laurent import DEFAULT_ORDER, TruncatedLaurent

TAYLOR_RADIUS = 0.1
TAYLOR_NODES = 32
SINGULARITY_DISTANCE = 0.25  # Z_1 is holomorphic for Re > -1/4


@dataclass
class MainTermEvaluator:
    """Pointwise T and M, with every constituent computed by this package."""

    table: EigenformTable
    prime_cutoff: int = DEFAULT_PRIME_CUTOFF
    smoothing: float = DEFAULT_SMOOTHING
    _sym2: Sym2Evaluator = field(init=False, repr=False)

    def __post_init__(self):
        self.prime_cutoff = min(self.prime_cutoff, self.table.limit)
        self._sym2 = Sym2Evaluator(self.table, self.smoothing, self.prime_cutoff)

    @property
    def kappa(self) -> int:
        return self.table.weight

    def T(self, alpha, beta):
        """The entire factor T(alpha, beta); vectorized over broadcast inputs."""
        a, b = np.broadcast_arrays(np.asarray(alpha, dtype=complex), np.asarray(beta, dtype=complex))
        if np.any(np.abs(a) > 0.3) or np.any(np.abs(b) > 0.3):
            raise DomainError("main term implemented for |alpha|, |beta| <= 0.3")
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        sym = self._sym2
        half = self.kappa / 2
        out = (np.exp(-(a + b) * math.log(2 * math.pi)) / (2 * math.pi**2)
               * sym(2 * a) * sym(2 * b) * sym(a + b)
               * Z1_value(self.table, a, b, self.prime_cutoff)
               * specfun.gamma_complex(a + half) * specfun.gamma_complex(b + half)
               * specfun.mellin_phi(1 + a + b))
        return specfun._out(np.asarray(out).reshape(shape))

    def zeta(self, s):
        return specfun.zeta_one_plus(s)

    def M(self, alpha, beta, X: float):
        a, b = np.broadcast_arrays(np.asarray(alpha, dtype=complex), np.asarray(beta, dtype=complex))
        if np.any(a + b == 0):
            raise PoleError("M(alpha, beta) has a pole at alpha + beta = 0")
        out = np.exp((1 + a + b) * math.log(X)) * np.asarray(self.zeta(a + b)) * np.asarray(self.T(a, b))
        return specfun._out(out)


def M_eval(ev: MainTermEvaluator, alpha, beta, X: float):
    return ev.M(alpha, beta, X)


# --- Taylor coefficients of T -----------------------------------------------------


def T_taylor(ev: MainTermEvaluator, orders: tuple[int, int] = (4, 4), radius: float = TAYLOR_RADIUS,
             nodes: int = TAYLOR_NODES) -> np.ndarray:
    """t[k, l] with T(a, b) = sum t[k, l] a^k b^l, from a 2-d trapezoid Cauchy integral.

    Aliasing error is ~(radius / 0.25)^nodes because Z_1 is holomorphic beyond
    Re = -1/4 and every other factor is entire or pole-free near the origin.
    """
    k_max, l_max = orders
    if k_max > 4 or l_max > 4:
        raise DomainError("orders up to 4 supported")
    if radius >= SINGULARITY_DISTANCE:
        raise DomainError(f"contour radius {radius} reaches the first singularity of T")
    theta = 2 * math.pi * np.arange(nodes) / nodes
    ring = radius * np.exp(1j * theta)
    vals = np.asarray(ev.T(ring[:, None], ring[None, :]))
    coef = np.fft.fft2(vals) / nodes**2
    k = np.arange(k_max + 1)[:, None]
    l = np.arange(l_max + 1)[None, :]
    return coef[: k_max + 1, : l_max + 1] / radius ** (k + l)


# --- series route for C_i -----------------------------------------------------------


@dataclass
class CoefficientSet:
    C: tuple[float, float, float, float]  # C_3, C_2, C_1, C_0
    route: str
    diagnostics: dict = field(default_factory=dict)

    @property
    def C3(self) -> float:
        return self.C[0]


def zeta_laurent_series(order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """zeta(1+s) = 1/s + c_0 + c_1 s + ..., known from s^-1 up to order terms."""
    c = specfun.zeta_laurent(max(order, 10))
    return TruncatedLaurent(-1, [1.0] + list(c[: order - 1]))


def _assemble(t: np.ndarray, order: int = DEFAULT_ORDER):
    """Laurent series A1 = zeta T e^(s^2)/s^2 and A0 = (zeta' T + zeta T_b) e^(s^2)/s^2."""
    zeta = zeta_laurent_series(order + 1)
    dzeta = zeta.derivative()
    n = min(order, t.shape[0])
    T0 = TruncatedLaurent.taylor(np.pad(t[:n, 0], (0, order - n)))
    T1 = TruncatedLaurent.taylor(np.pad(t[:n, 1], (0, order - n)))
    # only t[:n] is known; mark the rest unknown by truncating
    T0, T1 = T0.truncate(n), T1.truncate(n)
    weight = TruncatedLaurent.exp_poly(1.0, 2, order) * TruncatedLaurent.monomial(-2, order)
    A1 = zeta * T0 * weight
    A0 = (dzeta * T0 + zeta * T1) * weight
    return A1, A0


def coefficients_from_taylor(t: np.ndarray, order: int = DEFAULT_ORDER) -> tuple[float, float, float, float]:
    """(C_3, C_2, C_1, C_0) from the Taylor data of T.

    With X^s = sum_j (L s)^j / j!, the residue of X^(1+s)(L A1 + A0) is
    X sum_j L^j/j! ([A1]_{-1-j} L + [A0]_{-1-j}); collecting powers of L gives
    C_3 = [A1]_-3 / 2 + [A0]_-4 / 6, C_2 = [A1]_-2 + [A0]_-3 / 2,
    C_1 = [A1]_-1 + [A0]_-2, C_0 = [A0]_-1.
    """
    A1, A0 = _assemble(t, order)
    try:
        a1 = {k: A1.coefficient(k) for k in (-3, -2, -1)}
        a0 = {k: A0.coefficient(k) for k in (-4, -3, -2, -1)}
    except OrderError as exc:
        raise OrderError(f"Laurent data too short to close the residue: {exc}") from exc
    C3 = a1[-3] / 2 + a0[-4] / 6
    C2 = a1[-2] + a0[-3] / 2
    C1 = a1[-1] + a0[-2]
    C0 = a0[-1]
    return tuple(float(np.real(c)) for c in (C3, C2, C1, C0))


def extract_C(ev: MainTermEvaluator, radius: float = TAYLOR_RADIUS, nodes: int = TAYLOR_NODES) -> CoefficientSet:
    t = T_taylor(ev, (4, 4), radius, nodes)
    C = coefficients_from_taylor(t)
    return CoefficientSet(C, "laurent", {"T00": float(t[0, 0].real), "taylor_radius": radius, "taylor_nodes": nodes})


# --- numerical residue route ----------------------------------------------------


def residue_numeric(ev: MainTermEvaluator, logX, s_radius: float = 0.1, s_nodes: int = 64,
                    b_radius: float = 0.05, b_nodes: int = 64) -> np.ndarray:
    """Res_{s=0} M^(0,1)(s,0) e^(s^2)/s^2 for each log X, entirely by Cauchy integrals.

    d/db M(s, b) at b = 0 comes from a circle |b| = b_radius for every node of
    |s| = s_radius; M is evaluated pointwise (Euler-Maclaurin zeta, no Laurent data).
    """
    if b_radius >= s_radius:
        raise DomainError("beta circle must lie inside the s circle")
    logX = np.atleast_1d(np.asarray(logX, dtype=complex))
    th = 2 * math.pi * np.arange(s_nodes) / s_nodes
    ph = 2 * math.pi * np.arange(b_nodes) / b_nodes
    s = s_radius * np.exp(1j * th)[:, None]
    b = b_radius * np.exp(1j * ph)[None, :]
    core = np.asarray(ev.zeta(s + b)) * np.asarray(ev.T(s, b))  # M / X^(1+s+b)
    out = np.empty(logX.size, dtype=complex)
    for i, L in enumerate(logX):
        m = np.exp((1 + s + b) * L) * core
        dM = (m * np.exp(-1j * ph)[None, :]).mean(axis=1) / b_radius
        f = dM * np.exp(s[:, 0] ** 2) / s[:, 0] ** 2
        out[i] = np.mean(f * s[:, 0])
    return out


def extract_C_cauchy(ev: MainTermEvaluator, log_radius: float = 2.0, log_nodes: int = 8, **kw) -> CoefficientSet:
    """C_i from residues at complex log X on a circle: R(L) e^-L is a cubic in L."""
    th = 2 * math.pi * np.arange(log_nodes) / log_nodes
    L = log_radius * np.exp(1j * th)
    r = residue_numeric(ev, L, **kw) * np.exp(-L)
    coef = np.fft.fft(r) / log_nodes / log_radius ** np.arange(log_nodes)
    C = tuple(float(coef[k].real) for k in (3, 2, 1, 0))
    return CoefficientSet(C, "cauchy", {"higher_power_leak": float(np.max(np.abs(coef[4:])))})


def residue_polynomial(C, X: float) -> float:
    L = math.log(X)
    C3, C2, C1, C0 = C
    return X * (((C3 * L + C2) * L + C1) * L + C0)


# --- coefficients of the theorem -----------------------------------------------


@dataclass
class TheoremCoefficients:
    c3: float
    c2: float
    c1: float
    c0: float
    c3_closed_form: float
    relative_gap: float


def theorem_coefficients(ev: MainTermEvaluator, C: CoefficientSet | None = None,
                         L1: float | None = None, Z1: float | None = None) -> TheoremCoefficients:
    """c_i = 4 Gamma(k/2)^-2 C_i and the closed form 2 Phi~(1)/(3 pi^2) L(1,sym^2)^3 Z_1(0,0)."""
    C = C or extract_C(ev)
    g = math.gamma(ev.kappa / 2)
    c = [4.0 / g**2 * x for x in C.C]
    if L1 is None:
        L1 = float(np.real(ev._sym2(0.0)))
    if Z1 is None:
        Z1 = float(np.real(Z1_value(ev.table, 0.0, 0.0, ev.prime_cutoff).value))
    closed = 2.0 * float(np.real(specfun.mellin_phi(1.0))) / (3 * math.pi**2) * L1**3 * Z1
    return TheoremCoefficients(c[0], c[1], c[2], c[3], closed, abs(c[0] - closed) / abs(closed))


def main_prediction(coeffs: TheoremCoefficients, X: float) -> float:
    """c_3 X L^3 + c_2 X L^2 + c_1 X L."""
    L = math.log(X)
    return X * L * ((coeffs.c3 * L + coeffs.c2) * L + coeffs.c1)


# --- shifted combination ----------------------------------------------------------


def shifted_main_combination(ev: MainTermEvaluator, alpha: float, beta: float, X: float) -> float:
    """M(a,b) - M(a,-b) - M(-a,b) + M(-a,-b) for real shifts."""
    alpha, beta = float(alpha), float(beta)
    if alpha == 0 or beta == 0 or abs(alpha) > 0.05 or abs(beta) > 0.05:
        raise DomainError("need 0 < |alpha|, |beta| <= 0.05")
    if abs(alpha) == abs(beta):
        raise PoleError("alpha = +-beta puts two terms on the zeta pole")
    a = np.array([alpha, alpha, -alpha, -alpha])
    b = np.array([beta, -beta, beta, -beta])
    vals = np.real(np.asarray(ev.M(a, b, X)))
    return math.fsum(vals * np.array([1.0, -1.0, -1.0, 1.0]))
