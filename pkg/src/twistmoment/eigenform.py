"""Exact Fourier coefficients of level-1 Hecke eigenforms.

Weight 18 is Delta * E6, weight 26 is Delta * E6 * E8; both spaces of cusp
forms are one-dimensional so the products are the normalized eigenforms.
Delta is built as q * (eta^3 / q^(1/8))^8 from Jacobi's sparse series for
eta^3, and every product is an exact integer convolution.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import gmpy2
import numpy as np

from .arith import is_prime
from .errors import DomainError, ResourceError, WeightNotAvailable

SUPPORTED_WEIGHTS = (18, 26)
DEFAULT_WEIGHT = 18
MEMORY_BUDGET_BYTES = 4 * 2**30

CACHE_MAGIC = b"TWMCOEF\x00"
CACHE_VERSION = 1
CACHE_ENV = "TWISTMOMENT_CACHE"


# --- q-expansion arithmetic -------------------------------------------------


def eta_cube_series(n_terms: int) -> list[int]:
    """Coefficients of sum_k (-1)^k (2k+1) q^(k(k+1)/2), indices 0..n_terms-1."""
    out = [0] * n_terms
    k = 0
    while k * (k + 1) // 2 < n_terms:
        out[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return out


def _slot_bias(nbytes: int, count: int) -> gmpy2.mpz:
    return gmpy2.mpz(int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little"))


def _pack(coeffs: list[int], nbytes: int) -> gmpy2.mpz:
    bias = 1 << (8 * nbytes - 1)
    raw = b"".join((c + bias).to_bytes(nbytes, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(raw, "little")) - _slot_bias(nbytes, len(coeffs))


def series_mul(a: list[int], b: list[int], n_terms: int) -> list[int]:
    """Exact product of two integer power series truncated to n_terms.

    Kronecker substitution: both series are evaluated at 2^(8*nbytes) with a
    slot width that holds every product coefficient, multiplied once with GMP,
    and the balanced digits are read back.
    """
    a = a[:n_terms]
    b = b[:n_terms]
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * n_terms
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    prod = (prod + _slot_bias(nbytes, n_terms)) & ((gmpy2.mpz(1) << (8 * nbytes * n_terms)) - 1)
    raw = int(prod).to_bytes(nbytes * n_terms, "little")
    bias = 1 << (8 * nbytes - 1)
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - bias for i in range(n_terms)]


def series_mul_naive(a: list[int], b: list[int], n_terms: int) -> list[int]:
    """Schoolbook product; skips zero entries of ``a`` so sparse x dense is cheap."""
    out = [0] * n_terms
    for i, ai in enumerate(a[:n_terms]):
        if ai:
            for j in range(n_terms - i):
                out[i + j] += ai * b[j]
    return out


def divisor_power_sums(k: int, limit: int) -> list[int]:
    """sigma_k(n) for n = 0..limit (entry 0 is 0)."""
    s = np.zeros(limit + 1, dtype=object)
    s[:] = 0
    for d in range(1, limit + 1):
        s[d::d] += d**k
    return list(s)


def eisenstein(weight: int, n_terms: int) -> list[int]:
    consts = {4: 240, 6: -504, 8: 480}
    if weight not in consts:
        raise WeightNotAvailable(f"E_{weight} not available")
    sig = divisor_power_sums(weight - 1, n_terms - 1)
    c = consts[weight]
    return [1] + [c * s for s in sig[1:]]


def delta_series(n_terms: int, mul=series_mul) -> list[int]:
    """Ramanujan Delta = q * prod (1-q^n)^24, coefficients at q^0..q^(n_terms-1)."""
    e3 = eta_cube_series(n_terms)
    e6 = mul(e3, e3, n_terms)
    e12 = mul(e6, e6, n_terms)
    e24 = mul(e12, e12, n_terms)
    return [0] + e24[: n_terms - 1]


def delta_product_formula(n_terms: int) -> list[int]:
    """Delta from the product q * prod (1-q^n)^24; independent slow route."""
    a = np.zeros(n_terms, dtype=object)
    a[:] = 0
    if n_terms > 1:
        a[1] = 1
    for n in range(1, n_terms):
        for _ in range(24):
            a[n:] = a[n:] - a[:-n]
    return list(a)


def eigenform_series(weight: int, n_terms: int, mul=series_mul) -> list[int]:
    if weight == 18:
        factors = [eisenstein(6, n_terms)]
    elif weight == 26:
        factors = [eisenstein(6, n_terms), eisenstein(8, n_terms)]
    else:
        raise WeightNotAvailable(f"weight {weight} not available; supported: {SUPPORTED_WEIGHTS}")
    f = delta_series(n_terms, mul)
    for e in factors:
        f = mul(f, e, n_terms)
    return f


# --- the table ---------------------------------------------------------------


def estimated_bytes(weight: int, limit: int) -> int:
    bits = (weight - 1) / 2 * math.log2(max(limit, 2)) + 8
    return int(limit * (bits / 8 + 40 + 8))


@dataclass
class EigenformTable:
    weight: int
    limit: int
    coeffs: list[int] = field(repr=False)
    lambdas: np.ndarray = field(repr=False)

    @classmethod
    def from_coeffs(cls, weight: int, coeffs: list[int]) -> "EigenformTable":
        """``coeffs[n]`` is a(n); entry 0 is ignored."""
        limit = len(coeffs) - 1
        lam = np.zeros(limit + 1)
        half = weight - 1  # n^((k-1)/2) = sqrt(n^(k-1))
        e = half // 2
        for n in range(1, limit + 1):
            # a(n)/n^e is correctly rounded; one more rounding from sqrt
            v = coeffs[n] / n**e
            lam[n] = v / math.sqrt(n) if half % 2 else v
        return cls(weight, limit, [0] + list(coeffs[1:]), lam)

    def a(self, n: int) -> int:
        self._check(n)
        return self.coeffs[n]

    def lam(self, n: int) -> float:
        self._check(n)
        return float(self.lambdas[n])

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise IndexError(f"index {n} outside table 1..{self.limit}")

    def lambda_prime_power(self, p: int, e: int) -> float:
        """lambda(p^e) from the normalized Hecke recursion."""
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if e < 0:
            raise DomainError("exponent must be >= 0")
        lp = self.lam(p)
        prev, cur = 0.0, 1.0  # lambda(p^-1) := 0 makes the recursion start cleanly
        for _ in range(e):
            prev, cur = cur, lp * cur - prev
        return cur

    def truncated(self, limit: int) -> "EigenformTable":
        limit = min(limit, self.limit)
        return EigenformTable(self.weight, limit, self.coeffs[: limit + 1], self.lambdas[: limit + 1].copy())

    # cache file: magic, u32 version, u32 weight, u64 limit, then per coefficient
    # a u16 byte length and the two's-complement little-endian integer.
    def write(self, path: str | os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<IIQ", CACHE_VERSION, self.weight, self.limit))
            parts = []
            for c in self.coeffs[1:]:
                nb = (c.bit_length() + 8) // 8
                parts.append(struct.pack("<H", nb) + c.to_bytes(nb, "little", signed=True))
            fh.write(b"".join(parts))
        os.replace(tmp, path)

    @classmethod
    def read(cls, path: str | os.PathLike) -> "EigenformTable":
        data = Path(path).read_bytes()
        if data[:8] != CACHE_MAGIC:
            raise ValueError(f"{path}: not a coefficient cache")
        version, weight, limit = struct.unpack_from("<IIQ", data, 8)
        if version != CACHE_VERSION:
            raise ValueError(f"{path}: cache version {version}, expected {CACHE_VERSION}")
        pos = 24
        coeffs = [0]
        for _ in range(limit):
            (nb,) = struct.unpack_from("<H", data, pos)
            pos += 2
            coeffs.append(int.from_bytes(data[pos : pos + nb], "little", signed=True))
            pos += nb
        return cls.from_coeffs(weight, coeffs)


def build_table(weight: int = DEFAULT_WEIGHT, limit: int = 1000,
                memory_budget: int = MEMORY_BUDGET_BYTES) -> EigenformTable:
    if weight not in SUPPORTED_WEIGHTS:
        raise WeightNotAvailable(f"weight {weight} not available; supported: {SUPPORTED_WEIGHTS}")
    if limit < 1:
        raise DomainError("limit must be >= 1")
    need = estimated_bytes(weight, limit)
    if need > memory_budget:
        raise ResourceError(f"table of {limit} coefficients needs ~{need} bytes, budget {memory_budget}")
    coeffs = eigenform_series(weight, limit + 1)
    return EigenformTable.from_coeffs(weight, coeffs)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "twistmoment"


def cache_path(weight: int, limit: int, cache_dir: str | os.PathLike | None = None) -> Path:
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return base / f"coeffs_k{weight}_N{limit}.bin"


def load_table(weight: int = DEFAULT_WEIGHT, limit: int = 1000,
               cache_dir: str | os.PathLike | None = None, use_cache: bool = True) -> EigenformTable:
    """Table with at least ``limit`` terms, reusing any large-enough cache file."""
    if not use_cache:
        return build_table(weight, limit)
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if base.is_dir():
        sizes = []
        for f in base.glob(f"coeffs_k{weight}_N*.bin"):
            try:
                sizes.append((int(f.stem.split("_N")[1]), f))
            except (IndexError, ValueError):
                continue
        fits = sorted(item for item in sizes if item[0] >= limit)
        if fits:
            return EigenformTable.read(fits[0][1]).truncated(limit)
    table = build_table(weight, limit)
    try:
        table.write(cache_path(weight, limit, base))
    except OSError:
        pass
    return table
