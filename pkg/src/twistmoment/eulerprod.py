"""Symmetric-square L-values, the diagonal correction factor Z_1, and its identity.

The diagonal sum over odd n1, n2 with n1 n2 a square,

    D(z1, z2) = sum lambda(n1) lambda(n2) n1^(-1/2-z1) n2^(-1/2-z2) prod_{p | n1 n2} p/(p+1),

factors as zeta(1+z1+z2) L(1+2z1, sym^2) L(1+2z2, sym^2) L(1+z1+z2, sym^2) Z_1(z1, z2)
with Z_1 an absolutely convergent Euler product.  Its local factor is obtained by
dividing the local diagonal sum by the local factors of the four L-functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .arith import is_prime, primes_up_to
from .eigenform import EigenformTable
from .errors import AccuracyError, DomainError, TableTooSmall

DEFAULT_SMOOTHING = 10_000
SMOOTHING_RANGE = 25
TAYLOR_TERMS = 80
TAYLOR_RADIUS = 0.6
EULER_REGION = 1.5  # Re(1+w) at or above which the Euler product is used directly
DEFAULT_PRIME_CUTOFF = 100_000
Z1_CUTOFF_E = 40


# --- local data ----------------------------------------------------------------


@dataclass(frozen=True)
class SatakePair:
    """Roots of x^2 - lambda(p) x + 1 (unit modulus by Deligne)."""

    p: int
    alpha_p: complex
    beta_p: complex

    @classmethod
    def from_lambda(cls, p: int, lam: float) -> "SatakePair":
        disc = complex(lam * lam - 4.0)
        root = np.sqrt(disc)
        return cls(p, (lam + root) / 2, (lam - root) / 2)


def satake(table: EigenformTable, p: int) -> SatakePair:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return SatakePair.from_lambda(p, table.lam(p))


def _sym2_denominator(lam_p, x):
    """(1 - a^2 x)(1 - x)(1 - b^2 x) = 1 - A x + A x^2 - x^3 with A = lambda(p)^2 - 1."""
    A = lam_p * lam_p - 1.0
    return 1.0 - A * x + A * x * x - x * x * x


def sym2_local_factor(table: EigenformTable, p: int, s):
    """Local factor of L(1+s, sym^2 f) at p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    x = np.power(float(p), -1.0 - np.asarray(s, dtype=complex))
    return specfun._out(1.0 / _sym2_denominator(table.lam(p), x))


def sym2_prime_power_coeffs(lam_p: float, count: int) -> np.ndarray:
    """b(p^k), k = 0..count-1, from b_k = A b_{k-1} - A b_{k-2} + b_{k-3}."""
    A = lam_p * lam_p - 1.0
    b = np.zeros(count)
    for k in range(count):
        v = 1.0 if k == 0 else 0.0
        if k >= 1:
            v += A * b[k - 1]
        if k >= 2:
            v -= A * b[k - 2]
        if k >= 3:
            v += b[k - 3]
        b[k] = v
    return b


def sym2_coefficients(table: EigenformTable, limit: int) -> np.ndarray:
    """Dirichlet coefficients b(m), m = 0..limit (entry 0 unused), of L(s, sym^2 f)."""
    if limit > table.limit:
        raise TableTooSmall(limit, table.limit)
    b = np.ones(limit + 1)
    b[0] = 0.0
    idx_all = np.arange(limit + 1)
    for p in primes_up_to(limit):
        p = int(p)
        lam_p = table.lambdas[p]
        if p * p > limit:
            b[p::p] *= lam_p * lam_p - 1.0
            continue
        kmax = int(math.log(limit) / math.log(p)) + 1
        local = sym2_prime_power_coeffs(lam_p, kmax + 1)
        m = idx_all[p::p] // p
        v = np.ones(m.size, dtype=np.int64)
        while True:
            more = (m % p == 0) & (m > 0)
            if not more.any():
                break
            v += more
            m = np.where(more, m // p, m)
        b[p::p] *= local[v]
    return b


# --- L(1+w, sym^2 f) ------------------------------------------------------------


def _gamma_r(s):
    s = np.asarray(s, dtype=complex)
    return np.exp(-0.5 * s * math.log(math.pi)) * specfun.gamma_complex(s / 2)


def sym2_gamma_factor(s, kappa: int):
    """Gamma_R(s+1) Gamma_R(s+k-1) Gamma_R(s+k) for level-one sym^2 f."""
    return _gamma_r(s + 1) * _gamma_r(s + kappa - 1) * _gamma_r(s + kappa)


def sym2_fe_ratio(w, kappa: int):
    """gamma(1-w)/gamma(w), so that L(w) = ratio * L(1-w)."""
    w = np.asarray(w, dtype=complex)
    return sym2_gamma_factor(1 - w, kappa) / sym2_gamma_factor(w, kappa)


@dataclass
class Sym2Edge:
    """L(1+w, sym^2 f) near w = 0 from an exponentially smoothed series.

    S_T(w) = sum_m b(m) m^(-1-w) e^(-m/T) equals L(1+w) - T^-1 L(w) + O(T^-2);
    the functional equation turns L(w) into gamma(1-w)/gamma(w) L(1-w), and
    L(1-w) is again approximated by S_T(-w).  S_T is stored as a Taylor
    polynomial in w (moments of -log m), good for |w| <= TAYLOR_RADIUS.
    """

    weight: int
    T: float
    moments: np.ndarray = field(repr=False)
    terms: int

    @classmethod
    def build(cls, table: EigenformTable, T: float = DEFAULT_SMOOTHING, terms: int = TAYLOR_TERMS) -> "Sym2Edge":
        limit = int(SMOOTHING_RANGE * T)
        b = sym2_coefficients(table, limit)
        m = np.arange(1, limit + 1, dtype=float)
        vec = b[1:] / m * np.exp(-m / T)
        neg_log = -np.log(m)
        mom = np.empty(terms + 1)
        for k in range(terms + 1):
            mom[k] = math.fsum(vec)
            vec = vec * neg_log / (k + 1)
        return cls(table.weight, T, mom, limit)

    def smoothed(self, w):
        w = np.asarray(w, dtype=complex)
        if np.any(np.abs(w) > TAYLOR_RADIUS + 1e-12):
            raise DomainError(f"smoothed series stored for |w| <= {TAYLOR_RADIUS}")
        return np.polynomial.polynomial.polyval(w, self.moments)

    def value(self, w):
        w = np.asarray(w, dtype=complex)
        out = self.smoothed(w) + sym2_fe_ratio(w, self.weight) * self.smoothed(-w) / self.T
        return specfun._out(out)

    def uncorrected(self, w):
        return specfun._out(self.smoothed(np.asarray(w, dtype=complex)))


def sym2_euler_product(table: EigenformTable, w, prime_cutoff: int | None = None):
    """Partial Euler product of L(1+w, sym^2 f) over p <= prime_cutoff."""
    P = table.limit if prime_cutoff is None else prime_cutoff
    if P > table.limit:
        raise TableTooSmall(P, table.limit)
    w = np.asarray(w, dtype=complex)
    ps = primes_up_to(P).astype(float)
    lam = table.lambdas[ps.astype(np.int64)]
    flat = w.ravel()
    out = np.empty(flat.size, dtype=complex)
    lp = np.log(ps)
    for i in range(0, flat.size, 64):
        blk = flat[i : i + 64]
        x = np.exp(-np.outer(1.0 + blk, lp))
        out[i : i + 64] = np.exp(-np.log(_sym2_denominator(lam[None, :], x)).sum(axis=1))
    return specfun._out(out.reshape(w.shape))


def euler_tail_scale(prime_cutoff: int) -> float:
    """Typical size of the omitted tail sum_{p>P} lambda(p^2)/p at the edge.

    Heuristic (square-root cancellation): sqrt(sum_{p>P} p^-2) ~ (P ln P)^-1/2.
    """
    return 3.0 / math.sqrt(prime_cutoff * math.log(prime_cutoff))


@dataclass
class AnnotatedValue:
    value: complex
    error: float
    source: str
    cross_check: complex | None = None
    cross_check_error: float | None = None


_edge_cache: dict = {}


def sym2_edge(table: EigenformTable, T: float = DEFAULT_SMOOTHING) -> Sym2Edge:
    key = (id(table), table.weight, table.limit, float(T))
    if key not in _edge_cache:
        _edge_cache[key] = Sym2Edge.build(table, T)
    return _edge_cache[key]


def L1_sym2(table: EigenformTable, s=0.0, T: float = DEFAULT_SMOOTHING,
            prime_cutoff: int = DEFAULT_PRIME_CUTOFF, cross_check: bool = True) -> AnnotatedValue:
    """L(1+s, sym^2 f) with an error annotation and an Euler-product cross-check.

    The annotation is the change of the corrected value between smoothing
    scales T/4 and T, an overestimate because the leftover error decays like T^-2.
    """
    s = complex(s)
    if abs(s) > 0.3:
        raise DomainError("edge evaluation needs |s| <= 0.3")
    need = int(SMOOTHING_RANGE * T)
    if need > table.limit:
        raise TableTooSmall(need, table.limit)
    fine = sym2_edge(table, T).value(s)
    coarse = sym2_edge(table, T / 4).value(s)
    out = AnnotatedValue(fine, abs(fine - coarse), f"smoothed series T={T:g}, functional-equation corrected")
    if cross_check:
        P = min(prime_cutoff, table.limit)
        out.cross_check = sym2_euler_product(table, s, P)
        out.cross_check_error = euler_tail_scale(P)
    return out


class Sym2Evaluator:
    """Vectorized L(1+w, sym^2 f): Euler product for Re(1+w) >= 1.5, smoothed series near the edge."""

    def __init__(self, table: EigenformTable, T: float = DEFAULT_SMOOTHING,
                 prime_cutoff: int | None = None):
        self.table = table
        self.edge = sym2_edge(table, T)
        self.prime_cutoff = prime_cutoff or table.limit

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.empty(w.shape, dtype=complex)
        far = (1.0 + w.real) >= EULER_REGION
        near = ~far
        if np.any(near):
            out[near] = self.edge.value(w[near])
        if np.any(far):
            out[far] = sym2_euler_product(self.table, w[far], self.prime_cutoff)
        return specfun._out(out)


# --- Z_1 ------------------------------------------------------------------------


def _diag_weight(p):
    return p / (p + 1.0)


def _local_diagonal_closed(lam, p, x, y):
    """S_p = 1 + w (E - 1), E the even part of 1/((1 - lam x + x^2)(1 - lam y + y^2))."""
    f_plus = 1.0 / ((1.0 - lam * x + x * x) * (1.0 - lam * y + y * y))
    f_minus = 1.0 / ((1.0 + lam * x + x * x) * (1.0 + lam * y + y * y))
    return 1.0 + _diag_weight(p) * (0.5 * (f_plus + f_minus) - 1.0)


def _local_reciprocals(lam, p, z1, z2):
    """zeta_p(1+z1+z2)^-1 and the three sym^2 local factors at 1+2z1, 1+2z2, 1+z1+z2, inverted."""
    lp = np.log(p)
    zeta_inv = 1.0 - np.exp(-(1.0 + z1 + z2) * lp)
    den = (_sym2_denominator(lam, np.exp(-(1.0 + 2 * z1) * lp))
           * _sym2_denominator(lam, np.exp(-(1.0 + 2 * z2) * lp))
           * _sym2_denominator(lam, np.exp(-(1.0 + z1 + z2) * lp)))
    return zeta_inv * den


def _local_diagonal_series(lam_powers, p, z1, z2, cutoff_e):
    x = p ** (-0.5 - z1)
    y = p ** (-0.5 - z2)
    w = _diag_weight(p)
    total = 1.0 + 0j
    for e1 in range(cutoff_e + 1):
        for e2 in range(e1 % 2, cutoff_e - e1 + 1, 2):
            if e1 == 0 and e2 == 0:
                continue
            total += w * lam_powers[e1] * lam_powers[e2] * x**e1 * y**e2
    return total


def local_series_tail_bound(p: int, z1: complex, z2: complex, cutoff_e: int) -> float:
    """Majorant of the omitted terms e1+e2 > cutoff_e, from |lambda(p^e)| <= e+1."""
    r = max(p ** (-0.5 - complex(z1).real), p ** (-0.5 - complex(z2).real))
    if r >= 1:
        return math.inf
    total = 0.0
    E = cutoff_e + 1
    while True:
        term = (E + 1) * (E + 2) ** 2 / 4.0 * r**E
        total += term
        if term < 1e-30 or (E > cutoff_e + 10 and term < 1e-18 * total):
            break
        E += 1
    return _diag_weight(p) * total


def Z1_local(table: EigenformTable, p: int, z1, z2, method: str = "closed",
             cutoff_e: int = Z1_CUTOFF_E, tol: float = 1e-14) -> complex:
    """Local factor Z_{1,p}(z1, z2).

    ``method="closed"`` sums the local diagonal series in closed form;
    ``method="series"`` truncates at e1+e2 <= cutoff_e and raises AccuracyError
    when the certified tail exceeds ``tol``.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    z1, z2 = complex(z1), complex(z2)
    lam = table.lam(p)
    recip = _local_reciprocals(lam, float(p), z1, z2)
    if p == 2:
        return complex(recip)
    if method == "closed":
        x = p ** (-0.5 - z1)
        y = p ** (-0.5 - z2)
        return complex(_local_diagonal_closed(lam, p, x, y) * recip)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    tail = local_series_tail_bound(p, z1, z2, cutoff_e) * abs(recip)
    if tail > tol:
        raise AccuracyError(f"cutoff_e={cutoff_e} leaves a tail up to {tail:.2e} at p={p}", achieved=tail)
    lam_powers = [1.0, lam]
    for _ in range(2, cutoff_e + 1):
        lam_powers.append(lam * lam_powers[-1] - lam_powers[-2])
    return complex(_local_diagonal_series(lam_powers, p, z1, z2, cutoff_e) * recip)


def Z1_log_factors(table: EigenformTable, primes: np.ndarray, z1, z2) -> np.ndarray:
    """log Z_{1,p} on a (points, primes) grid; p = 2 handled as the pure reciprocal."""
    p = primes.astype(float)[None, :]
    lam = table.lambdas[primes.astype(np.int64)][None, :]
    z1 = np.asarray(z1, dtype=complex).ravel()[:, None]
    z2 = np.asarray(z2, dtype=complex).ravel()[:, None]
    lp = np.log(p)
    x = np.exp(-(0.5 + z1) * lp)
    y = np.exp(-(0.5 + z2) * lp)
    s = _local_diagonal_closed(lam, p, x, y)
    s = np.where(p == 2.0, 1.0, s)
    return np.log(s * _local_reciprocals(lam, p, z1, z2))


_tail_constants: dict = {}


def z1_tail_constant(table: EigenformTable, lo: int = 1000, hi: int = 10_000) -> float:
    """C with |Z_{1,p}(0,0) - 1| <= C/p^2 on lo <= p <= hi (max of the observed ratio)."""
    key = (id(table), table.limit, lo, hi)
    if key not in _tail_constants:
        ps = primes_up_to(min(hi, table.limit))
        ps = ps[ps >= lo]
        logs = Z1_log_factors(table, ps, 0.0, 0.0)[0]
        _tail_constants[key] = float(np.max(np.abs(np.expm1(logs)) * ps.astype(float) ** 2))
    return _tail_constants[key]


def prime_tail_inverse_square(P: int) -> float:
    """Upper estimate of sum_{p > P} p^-2 (~ 1/(P ln P))."""
    return 1.0 / (P * math.log(P))


def Z1_value(table: EigenformTable, z1, z2, prime_cutoff: int = DEFAULT_PRIME_CUTOFF,
             chunk: int = 64) -> AnnotatedValue | np.ndarray:
    """prod_{p <= P} Z_{1,p}(z1, z2).

    Scalar input returns an AnnotatedValue carrying the tail C sum_{p>P} p^-2;
    array input returns the bare values (same shape).  Primes are processed in
    a fixed order and the logs summed exactly, so results are reproducible.
    """
    if prime_cutoff > table.limit:
        raise TableTooSmall(prime_cutoff, table.limit)
    scalar = np.ndim(z1) == 0 and np.ndim(z2) == 0
    z1a, z2a = np.broadcast_arrays(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    shape = z1a.shape
    f1, f2 = z1a.ravel(), z2a.ravel()
    ps = primes_up_to(prime_cutoff)
    out = np.empty(f1.size, dtype=complex)
    for i in range(0, f1.size, chunk):
        logs = Z1_log_factors(table, ps, f1[i : i + chunk], f2[i : i + chunk])
        re = np.array([math.fsum(r) for r in logs.real])
        im = logs.imag.sum(axis=1)
        out[i : i + chunk] = np.exp(re + 1j * im)
    if scalar:
        v = complex(out[0])
        err = abs(v) * z1_tail_constant(table) * prime_tail_inverse_square(prime_cutoff)
        return AnnotatedValue(v, err, f"Euler product over p <= {prime_cutoff}")
    return out.reshape(shape)


# --- the diagonal identity -----------------------------------------------------


def _odd_core_and_weight(limit: int):
    """Square-free kernel of every n <= limit and g(n) = prod_{p|n} p/(p+1)."""
    core = np.ones(limit + 1, dtype=np.int64)
    g = np.ones(limit + 1)
    for p in primes_up_to(limit):
        p = int(p)
        g[p::p] *= p / (p + 1.0)
        m = np.arange(p, limit + 1, p)
        v = np.zeros(m.size, dtype=np.int64)
        r = m.copy()
        while True:
            div = r % p == 0
            if not div.any():
                break
            v += div
            r = np.where(div, r // p, r)
        odd_power = (v % 2) == 1
        core[m[odd_power]] *= p
    return core, g


@dataclass
class DiagonalCheck:
    z1: complex
    z2: complex
    brute: complex
    factored: complex
    residual: float
    certified_tail: float
    cutoffs: tuple[int, int]
    factors: dict


def diagonal_majorant_total(s1: float, s2: float, table: EigenformTable | None = None,
                            prime_cutoff: int = 10**6, depth: int = 60) -> float:
    """Euler product of sum |lambda(n1) lambda(n2)| n1^-s1 n2^-s2 g(n1 n2) over odd n1 n2 = square.

    |lambda| is multiplicative, so the product over primes bounds the full
    absolute sum.  Primes inside ``table`` use the exact |lambda(p^e)| up to
    ``depth`` (remaining exponents bounded by e+1); larger primes use the
    Deligne bound e+1, whose generating series has a closed form.  The prime
    tail beyond ``prime_cutoff`` is bounded by exp(20 sum_{p>P} p^-2m) - 1,
    m = min(s1, s2).
    """
    ps = primes_up_to(prime_cutoff)[1:]
    log_total = 0.0
    if table is not None:
        small = ps[ps <= table.limit]
        ps = ps[ps > table.limit]
        lam = table.lambdas[small]
        mags = np.empty((depth + 1, small.size))
        prev, cur = np.zeros(small.size), np.ones(small.size)
        for e in range(depth + 1):
            mags[e] = np.abs(cur)
            prev, cur = cur, lam * cur - prev
        pf = small.astype(float)
        x = pf ** (-s1)
        y = pf ** (-s2)
        ex = np.arange(depth + 1)[:, None]
        u = mags * x[None, :] ** ex
        v = mags * y[None, :] ** ex
        # e1 + e2 even: pair even with even and odd with odd exponents
        even = u[0::2].sum(0) * v[0::2].sum(0) + u[1::2].sum(0) * v[1::2].sum(0)
        # exponents beyond depth, with |lambda(p^e)| <= e+1
        r = np.maximum(x, y)
        tail = 6.0 * (depth + 3) ** 3 * r ** (depth + 1) / (1 - r) ** 4
        w = pf / (pf + 1.0)
        log_total += math.fsum(np.log1p(w * (even + tail - 1.0)))
    pf = ps.astype(float)
    x = pf ** (-s1)
    y = pf ** (-s2)
    # sum_e (e+1) x^e = 1/(1-x)^2 ; even part of the product gives e1+e2 even
    f = lambda a, b: 1.0 / ((1.0 - a) ** 2 * (1.0 - b) ** 2)
    even = 0.5 * (f(x, y) + f(-x, -y))
    w = pf / (pf + 1.0)
    log_total += math.fsum(np.log1p(w * (even - 1.0)))
    m = min(s1, s2)
    tail = 20.0 * prime_cutoff ** (1 - 2 * m) / ((2 * m - 1) * math.log(prime_cutoff))
    return math.exp(log_total) * math.exp(tail)


def verify_diagonal_identity(table: EigenformTable, z1: float, z2: float,
                             sum_cutoff: int = 100_000, second_cutoff: int | None = None,
                             prime_cutoff: int | None = None) -> DiagonalCheck:
    """Brute-force diagonal sum against its factored form.

    n1 runs to ``sum_cutoff`` and n2 to ``second_cutoff`` (default: same).  The
    certified tail is the full absolute majorant (Euler product of tau-weighted
    local sums) minus its value on the pairs actually summed.
    """
    z1, z2 = complex(z1), complex(z2)
    if z1.real < 0.5 or z2.real < 0.5:
        raise DomainError("brute-force side needs Re(z1), Re(z2) >= 1/2")
    c1 = sum_cutoff
    c2 = second_cutoff or sum_cutoff
    big = max(c1, c2)
    if big > table.limit:
        raise TableTooSmall(big, table.limit)
    core, g = _odd_core_and_weight(big)
    n = np.arange(1, big + 1, 2)
    lam = table.lambdas[n]
    q = core[n]
    order = np.lexsort((n, q))
    n, lam, q = n[order], lam[order], q[order]
    bounds = np.flatnonzero(np.diff(q)) + 1
    starts = np.concatenate([[0], bounds])
    stops = np.concatenate([bounds, [n.size]])
    s1, s2 = 0.5 + z1.real, 0.5 + z2.real
    brute_parts = []
    major_parts = []
    for a, b in zip(starts, stops):
        nn = n[a:b]
        in1 = nn <= c1
        in2 = nn <= c2
        if not in1.any() or not in2.any():
            continue
        n1, n2 = nn[in1], nn[in2]
        ln1, ln2 = np.log(n1), np.log(n2)
        u = lam[a:b][in1] * g[n1] * np.exp(-(0.5 + z1) * ln1)
        v = lam[a:b][in2] * g[n2] * np.exp(-(0.5 + z2) * ln2)
        gcd = np.gcd.outer(n1, n2)
        brute_parts.append(np.sum(np.outer(u, v) / g[gcd]))
        mu = np.abs(lam[a:b][in1]) * g[n1] * np.exp(-s1 * ln1)
        mv = np.abs(lam[a:b][in2]) * g[n2] * np.exp(-s2 * ln2)
        major_parts.append(float(np.sum(np.outer(mu, mv) / g[gcd])))
    brute_parts = np.array(brute_parts)
    brute = complex(math.fsum(brute_parts.real), math.fsum(brute_parts.imag))
    covered = math.fsum(major_parts)
    tail = max(0.0, diagonal_majorant_total(s1, s2, table) - covered)

    P = prime_cutoff or table.limit
    zeta = complex(specfun.zeta_one_plus(z1 + z2))
    L_a = complex(sym2_euler_product(table, 2 * z1, P))
    L_b = complex(sym2_euler_product(table, 2 * z2, P))
    L_c = complex(sym2_euler_product(table, z1 + z2, P))
    Z = Z1_value(table, z1, z2, min(P, table.limit)).value
    factored = zeta * L_a * L_b * L_c * Z
    factors = {"zeta": zeta, "L_sym2(1+2z1)": L_a, "L_sym2(1+2z2)": L_b, "L_sym2(1+z1+z2)": L_c, "Z1": Z}
    return DiagonalCheck(z1, z2, brute, factored, abs(brute - factored), tail, (c1, c2), factors)


# --- bundle ---------------------------------------------------------------------


@dataclass
class ConstantsBundle:
    weight: int
    L1sym2: AnnotatedValue
    Z1_00: AnnotatedValue
    gamma0: float
    gamma1: float
    phi_tilde_1: float
    provenance: dict = field(default_factory=dict)

    def flags(self) -> list[str]:
        out = []
        if self.L1sym2.value.real <= 0:
            out.append("L(1, sym^2 f) not positive")
        if self.Z1_00.value.real <= 0:
            out.append("Z_1(0,0) not positive")
        return out


def compute_constants(table: EigenformTable, prime_cutoff: int = DEFAULT_PRIME_CUTOFF,
                      T: float = DEFAULT_SMOOTHING) -> ConstantsBundle:
    L1 = L1_sym2(table, 0.0, T, prime_cutoff)
    L1.value = complex(L1.value.real, 0.0)
    Z = Z1_value(table, 0.0, 0.0, min(prime_cutoff, table.limit))
    return ConstantsBundle(
        weight=table.weight,
        L1sym2=L1,
        Z1_00=Z,
        gamma0=specfun.stieltjes(0),
        gamma1=specfun.stieltjes(1),
        phi_tilde_1=float(np.real(specfun.mellin_phi(1.0))),
        provenance={
            "L1sym2": L1.source + "; annotation = change from T/4 to T",
            "Z1_00": Z.source + "; tail = C sum_{p>P} p^-2 with C fitted on 10^3..10^4",
            "gamma0": "Cauchy coefficients of Euler-Maclaurin zeta(1+s)",
            "gamma1": "Cauchy coefficients of Euler-Maclaurin zeta(1+s)",
            "phi_tilde_1": "256-point Gauss-Legendre on the window support",
        },
    )
