"""Oracle suites: each check compares a library value with an independent route.

Every check produces a row ``(suite, name, error, tolerance, passed)``.  The
printed table carries no timings or paths so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import eigenform, eulerprod, gausspoisson, lvalue, mainterm, specfun
from .arith import tau_sieve, totient
from .config import RunConfig
from .eigenform import EigenformTable, load_table

SUITES = ("specfun", "eigenform", "lvalue", "poisson", "eulerprod", "mainterm")

KERNEL_ALPHAS = (0.0, 0.05, -0.05, 0.2, -0.2)
KERNEL_XIS = (0.1, 1.0, 5.0, 20.0)
DUAL_ROUTE_DS = (1, 3, 5, 7, 11, 13)
CONTOUR_LINES = (0.15, 0.25, 0.35)
POISSON_NS = (1, 3, 5, 9, 15, 21)
POISSON_ZS = (10.0, 100.0, 1000.0)


@dataclass
class CheckResult:
    suite: str
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tol)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{self.suite:<10} {self.name:<44} {self.error:10.3e} {self.tol:8.1e}  {flag}"


def _rel(a, b) -> float:
    return float(abs(a - b) / abs(b))


# --- specfun ---------------------------------------------------------------------


def kernel_identity_errors(kappa: int = 18) -> list[tuple[float, float, float]]:
    """(alpha, xi, relative error) of omega against its contour integral."""
    out = []
    for al in KERNEL_ALPHAS:
        for xi in KERNEL_XIS:
            v = complex(specfun.omega(al, kappa, xi))
            ref = specfun.omega_contour(al, kappa, xi)
            out.append((al, xi, _rel(v, ref)))
    return out


def gamma_product_limit(z: complex) -> complex:
    """Gamma(z) from Euler's product limit, Richardson-extrapolated in 1/n."""
    levels = [2**k for k in range(10, 17)]
    vals = []
    for n in levels:
        # log(n! n^z / (z (z+1) ... (z+n))) with the factorials cancelled termwise
        terms = np.log1p(z / np.arange(1, n + 1, dtype=float))
        logp = z * math.log(n) - np.log(z) - complex(math.fsum(terms.real), math.fsum(terms.imag))
        vals.append(logp)
    # error of log P_n is a power series in 1/n; Richardson with ratio 2
    table = [vals]
    for j in range(1, len(vals)):
        prev = table[-1]
        table.append([(2**j * prev[i + 1] - prev[i]) / (2**j - 1) for i in range(len(prev) - 1)])
    return complex(np.exp(table[-1][0]))


def eta_borwein(s: complex, n: int = 50) -> complex:
    """Dirichlet eta by Borwein's accelerated alternating series."""
    d = [0.0] * (n + 1)
    acc = 0.0
    for i in range(n + 1):
        acc += math.factorial(n + i - 1) * 4**i / (math.factorial(n - i) * math.factorial(2 * i))
        d[i] = n * acc
    total = 0j
    for k in range(n):
        total += (-1) ** k * (d[k] - d[n]) / (k + 1) ** s
    return -total / d[n]


def zeta_eta_route(s: complex) -> complex:
    return eta_borwein(s) / (1 - 2 ** (1 - s))


def specfun_checks() -> list[CheckResult]:
    out = []
    errs = kernel_identity_errors()
    out.append(CheckResult("specfun", f"kernel identity ({len(errs)}-point grid)", max(e for *_, e in errs), 1e-9))
    rng = np.random.default_rng(7)
    worst = 0.0
    for a, x in zip(rng.uniform(0.5, 15, 50), rng.uniform(0.05, 40, 50)):
        lhs = specfun.upper_gamma(a + 1, x)
        rhs = a * specfun.upper_gamma(a, x) + math.exp(a * math.log(x) - x)
        worst = max(worst, _rel(lhs, rhs))
    out.append(CheckResult("specfun", "incomplete gamma recurrence", worst, 1e-10))
    g2 = gamma_product_limit(2 + 3j)
    out.append(CheckResult("specfun", "Gamma(2+3i) vs product limit", _rel(complex(specfun.gamma_complex(2 + 3j)), g2), 1e-10))
    out.append(CheckResult("specfun", "Gamma(1/2) = sqrt(pi)", _rel(complex(specfun.gamma_complex(0.5)), math.sqrt(math.pi)), 1e-14))
    circle = 0.3 * np.exp(2j * math.pi * np.arange(16) / 16)
    worst = max(_rel(complex(specfun.zeta_one_plus(s)), zeta_eta_route(1 + s)) for s in circle)
    out.append(CheckResult("specfun", "zeta Euler-Maclaurin vs eta on |s|=0.3", worst, 1e-9))
    out.append(CheckResult("specfun", "zeta(1.5)", abs(float(np.real(specfun.zeta_one_plus(0.5))) - 2.612375348685488), 1e-9))
    out.append(CheckResult("specfun", "gamma_0 (Euler constant)", abs(specfun.stieltjes(0) - 0.5772156649015329), 1e-9))
    # gamma_1 from its limit definition with Euler-Maclaurin corrections
    M = 10**5
    k = np.arange(1, M + 1, dtype=float)
    g1 = math.fsum(np.log(k) / k) - math.log(M) ** 2 / 2 - math.log(M) / (2 * M) + (1 - math.log(M)) / (12 * M**2)
    out.append(CheckResult("specfun", "gamma_1 vs limit definition", abs(specfun.stieltjes(1) - g1), 1e-8))
    fd = specfun.omega_dalpha_fd(0.0, 18, 1.0)
    quad = specfun.omega_dalpha(0.0, 18, 1.0)
    out.append(CheckResult("specfun", "d omega / d alpha quadrature vs difference", abs(fd - quad) / 1e4, 1e-8))
    out.append(CheckResult("specfun", "dGamma(a,0)/da at a=1 = -gamma_0",
                           abs(specfun.omega_dalpha(-8.0, 18, 1e-300) + specfun.EULER_GAMMA), 1e-9))
    h = 1e-4
    d_fd = (specfun.mellin_phi(1 + h) - specfun.mellin_phi(1 - h)) / (2 * h)
    out.append(CheckResult("specfun", "Mellin derivative relation", _rel(d_fd, specfun.mellin_phi(1.0, 1)), 1e-6))
    return out


# --- eigenform -------------------------------------------------------------------


def multiplicativity_failures(table: EigenformTable, limit: int) -> int:
    """n <= limit where a(n) != a(p^e) a(n/p^e) for the least prime p | n, or Hecke fails."""
    a = table.coeffs
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    bad = 0
    for n in range(2, limit + 1):
        p = int(spf[n])
        q = p
        while n % (q * p) == 0:
            q *= p
        if q != n:
            bad += a[n] != a[q] * a[n // q]
        elif q > p:
            # Hecke relation at prime powers, exact in the integers
            bad += a[q] != a[p] * a[q // p] - p ** (table.weight - 1) * a[q // (p * p)]
    return bad


def deligne_violations(table: EigenformTable, limit: int) -> float:
    """max over n <= limit of |lambda(n)| / tau(n) - 1, clipped at 0."""
    tau = tau_sieve(limit)[1:]
    ratio = np.abs(table.lambdas[1 : limit + 1]) / tau
    return float(max(0.0, ratio.max() - 1.0))


def lambda_rounding_error(table: EigenformTable, ns) -> float:
    """Worst relative error of lambda(n) against an exact rational reference, in units of eps."""
    from fractions import Fraction

    worst = 0.0
    for n in ns:
        a = table.coeffs[n]
        if a == 0:
            continue
        exact2 = Fraction(a * a, n ** (table.weight - 1))  # lambda^2 exactly
        lam = Fraction(table.lambdas[n])
        err = abs(float((lam * lam - exact2) / exact2)) / 2.0
        worst = max(worst, err / np.finfo(float).eps)
    return worst


def eigenform_checks(table: EigenformTable, limit: int = 100_000) -> list[CheckResult]:
    t = table.truncated(limit)
    out = [
        CheckResult("eigenform", f"multiplicativity + Hecke, n <= {t.limit}", multiplicativity_failures(t, t.limit), 0),
        CheckResult("eigenform", f"Deligne |lambda(n)| <= tau(n), n <= {t.limit}", deligne_violations(t, t.limit), 1e-12),
    ]
    fast = eigenform.eigenform_series(18, 5)
    slow = eigenform.eigenform_series(18, 5, mul=eigenform.series_mul_naive)
    prod = eigenform.series_mul_naive(eigenform.delta_product_formula(5), eigenform.eisenstein(6, 5), 5)
    expect = {2: -528, 4: 147712}
    for n, v in expect.items():
        err = max(abs(fast[n] - v), abs(slow[n] - v), abs(prod[n] - v), abs(t.coeffs[n] - v))
        out.append(CheckResult("eigenform", f"a({n}) = {v} by three routes", err, 0))
    ns = [int(n) for n in np.linspace(1, t.limit, 2000).astype(int)]
    out.append(CheckResult("eigenform", "lambda rounding (units of eps)", lambda_rounding_error(t, ns), 4.0))
    worst = 0.0
    for p in (2, 3, 5, 7, 97, 997):
        if p <= t.limit:
            sp = eulerprod.satake(t, p)
            worst = max(worst, abs(abs(sp.alpha_p) - 1.0))
    out.append(CheckResult("eigenform", "Satake |alpha_p| = 1", worst, 1e-10))
    return out


# --- lvalue ----------------------------------------------------------------------


def dual_route_error(table: EigenformTable, d: int, c: float = 0.25, eps: float = 1e-13) -> float:
    s = lvalue.derivative_central(table, d, eps).value
    k = lvalue.derivative_contour(table, d, c, eps).value
    return abs(s - k) / abs(s)


def lvalue_checks(table: EigenformTable) -> list[CheckResult]:
    out = []
    out.append(CheckResult("lvalue", "series vs contour, d in {1,3,5,7,11,13}",
                           max(dual_route_error(table, d) for d in DUAL_ROUTE_DS), 1e-8))
    vals = [lvalue.derivative_contour(table, 13, c, 1e-13).value for c in CONTOUR_LINES]
    out.append(CheckResult("lvalue", "contour line independence, d=13",
                           (max(vals) - min(vals)) / abs(vals[1]), 1e-8))
    # completed value against a short direct sum with scipy's incomplete gamma
    from scipy import special

    d, al = 1, 0.1
    v, _, _ = lvalue.I_alpha(table, d, al, 1e-14)
    q = 8 * d / (2 * math.pi)
    n = np.arange(1, 51)
    chi = np.array([lvalue._member(d).char(int(k)) for k in n], dtype=float)
    x = n / q
    ref = math.sqrt(q) * math.fsum(table.lambdas[1:51] * chi / np.sqrt(n) * x ** (-al)
                                   * special.gammaincc(9 + al, x) * special.gamma(9 + al))
    out.append(CheckResult("lvalue", "I_alpha vs direct sum, d=1, alpha=0.1", _rel(v, ref), 1e-11))
    cv = lvalue.completed_lambda(table, 5, 0.2).value
    cm = lvalue.completed_lambda(table, 5, -0.2).value
    out.append(CheckResult("lvalue", "completed value odd in alpha", abs(cv + cm), 0.0))
    return out


# --- poisson ---------------------------------------------------------------------


def gauss_zero_failures(limit: int = 10_000) -> float:
    """max |G_0(n) - phi(n)[n square]| over odd n <= limit."""
    worst = 0.0
    for n in range(1, limit + 1, 2):
        g0 = gausspoisson.gauss_sums(n)[0]
        r = math.isqrt(n)
        want = totient(n) if r * r == n else 0
        worst = max(worst, abs(g0 - want) / max(1.0, math.sqrt(n)))
    return worst


def poisson_grid() -> list[gausspoisson.PoissonResidual]:
    return [gausspoisson.verify_poisson(gausspoisson.PHI_WINDOW, n, Z) for n in POISSON_NS for Z in POISSON_ZS]


def poisson_checks() -> list[CheckResult]:
    out = [CheckResult("poisson", "G_0(n) = phi(n)[n square], odd n <= 10^4", gauss_zero_failures(), 1e-9)]
    for r in poisson_grid():
        out.append(CheckResult("poisson", f"residual n={r.n} Z={r.Z:g}", r.residual, 1e-8))
    y = 0.7
    out.append(CheckResult("poisson", "transform vs Mellin-Barnes, y=0.7",
                           _rel(gausspoisson.f_check_mellin_barnes("phi", y), gausspoisson.f_check("phi", y)), 1e-8))
    return out


# --- eulerprod -------------------------------------------------------------------


def eulerprod_checks(table: EigenformTable, sum_cutoff: int = 100_000) -> list[CheckResult]:
    out = []
    chk = eulerprod.verify_diagonal_identity(table, 1.0, 1.0, sum_cutoff)
    out.append(CheckResult("eulerprod", "diagonal identity (1,1) residual", chk.residual, 1e-4))
    out.append(CheckResult("eulerprod", "diagonal identity (1,1) certified tail", chk.certified_tail, 1e-4))
    closed = eulerprod.Z1_local(table, 3, 0.0, 0.0)
    series = eulerprod.Z1_local(table, 3, 0.0, 0.0, method="series", cutoff_e=120)
    out.append(CheckResult("eulerprod", "Z_1 local factor closed vs series, p=3", abs(closed - series), 1e-14))
    L1 = eulerprod.L1_sym2(table, 0.0)
    out.append(CheckResult("eulerprod", "L(1,sym^2) smoothing annotation", L1.error, 1e-6))
    w = 0.5
    sm = eulerprod.sym2_edge(table).value(w)
    ep = eulerprod.sym2_euler_product(table, w, table.limit)
    out.append(CheckResult("eulerprod", "L(1.5,sym^2) smoothed vs Euler product", _rel(sm, ep), 1e-6))
    return out


# --- mainterm --------------------------------------------------------------------


def mainterm_checks(table: EigenformTable, config: RunConfig) -> list[CheckResult]:
    ev = mainterm.MainTermEvaluator(table, config.prime_cutoff, config.smoothing)
    series = mainterm.extract_C(ev)
    cauchy = mainterm.extract_C_cauchy(ev)
    worst = max(_rel(a, b) for a, b in zip(series.C, cauchy.C))
    out = [CheckResult("mainterm", "C_i Laurent vs Cauchy residue", worst, 1e-8)]
    tc = mainterm.theorem_coefficients(ev, series)
    out.append(CheckResult("mainterm", "c_3 vs closed form", tc.relative_gap, 1e-6))
    for X in (1e2, 1e4):
        num = mainterm.residue_numeric(ev, math.log(X))[0].real
        out.append(CheckResult("mainterm", f"residue polynomial at X={X:g}",
                               _rel(num, mainterm.residue_polynomial(series.C, X)), 1e-8))
    return out


# --- driver ----------------------------------------------------------------------


def run_suite(name: str, config: RunConfig | None = None, table: EigenformTable | None = None,
              emit: Callable[[str], None] | None = None) -> list[CheckResult]:
    config = config or RunConfig()
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    if table is None and any(n != "specfun" and n != "poisson" for n in names):
        table = load_table(config.weight, config.table_limit, config.cache())
    results: list[CheckResult] = []
    for n in names:
        if n == "specfun":
            part = specfun_checks()
        elif n == "eigenform":
            part = eigenform_checks(table)
        elif n == "lvalue":
            part = lvalue_checks(table)
        elif n == "poisson":
            part = poisson_checks()
        elif n == "eulerprod":
            part = eulerprod_checks(table)
        else:
            part = mainterm_checks(table, config)
        if emit:
            for r in part:
                emit(r.line())
        results += part
    return results


def summary_line(results: list[CheckResult]) -> str:
    bad = sum(not r.passed for r in results)
    return f"{len(results)} checks, {bad} failed"
