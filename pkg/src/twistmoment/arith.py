"""Integer arithmetic: Kronecker symbols, sieves, and multiplicative functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

PRIME_CACHE_LIMIT = 10**6


def prime_sieve(limit: int) -> np.ndarray:
    """All primes p <= limit as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@lru_cache(maxsize=1)
def _cached_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in prime_sieve(PRIME_CACHE_LIMIT))


def primes_up_to(limit: int) -> np.ndarray:
    if limit <= PRIME_CACHE_LIMIT:
        ps = np.asarray(_cached_primes(), dtype=np.int64)
        return ps[: np.searchsorted(ps, limit, side="right")]
    return prime_sieve(limit)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _cached_primes():
        if p * p > n:
            return True
        if n % p == 0:
            return n == p
    # beyond the cache: finish by plain trial division
    f = PRIME_CACHE_LIMIT + 1
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division over the cached primes."""
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in _cached_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    else:
        f = PRIME_CACHE_LIMIT + 1
        while f * f <= n:
            while n % f == 0:
                out[f] = out.get(f, 0) + 1
                n //= f
            f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _check_positive(n: int) -> None:
    if n < 1:
        raise DomainError(f"arithmetic function undefined at n={n}")


def totient(n: int) -> int:
    _check_positive(n)
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def tau(n: int) -> int:
    """Number of divisors."""
    _check_positive(n)
    return math.prod(e + 1 for e in factorize(n).values())


def mobius(n: int) -> int:
    _check_positive(n)
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise DomainError("Jacobi symbol needs odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def jacobi_array(a, n) -> np.ndarray:
    """Vectorized Jacobi symbol (a/n); every n must be odd and positive."""
    a = np.array(a, dtype=np.int64, copy=True)
    n = np.array(n, dtype=np.int64, copy=True)
    a, n = np.broadcast_arrays(a, n)
    a = a.copy()
    n = n.copy()
    if np.any(n <= 0) or np.any(n % 2 == 0):
        raise DomainError("Jacobi symbol needs odd positive modulus")
    a %= n
    result = np.ones(a.shape, dtype=np.int64)
    active = a != 0
    while np.any(active):
        idx = np.flatnonzero(active)
        aa, nn = a.flat[idx], n.flat[idx]
        rr = result.flat[idx]
        even = aa % 2 == 0
        while np.any(even):
            aa = np.where(even, aa // 2, aa)
            flip = even & ((nn % 8 == 3) | (nn % 8 == 5))
            rr = np.where(flip, -rr, rr)
            even = (aa % 2 == 0) & (aa != 0)
        flip = (aa % 4 == 3) & (nn % 4 == 3)
        rr = np.where(flip, -rr, rr)
        aa, nn = nn % aa, aa
        a.flat[idx], n.flat[idx], result.flat[idx] = aa, nn, rr
        active = a != 0
    return np.where(n == 1, result, 0)


def character_table(disc: int) -> np.ndarray:
    """Values of n -> (disc/n) on one full period 0..|disc|-1.

    Only valid for a fundamental discriminant ``disc = 8d`` with d odd,
    where the character is periodic modulo ``disc``.
    """
    if disc % 8 != 0 or (disc // 8) % 2 == 0:
        raise DomainError("character_table expects disc = 8d with d odd")
    n = np.arange(disc, dtype=np.int64)
    out = np.zeros(disc, dtype=np.int8)
    odd = n[1::2]
    two = np.where((odd % 8 == 1) | (odd % 8 == 7), 1, -1)
    out[1::2] = two * jacobi_array(disc // 8, odd)
    return out


def squarefree_odd_in(lo: float, hi: float) -> list[int]:
    """Odd square-free integers d with lo < d < hi, ascending."""
    if lo < 0 or hi <= lo:
        return []
    start = math.floor(lo) + 1
    stop = math.ceil(hi) - 1
    if stop < start:
        return []
    mask = np.ones(stop - start + 1, dtype=bool)
    for p in primes_up_to(math.isqrt(stop))[1:]:
        q = int(p) * int(p)
        first = -(-start // q) * q
        mask[first - start :: q] = False
    vals = np.arange(start, stop + 1)
    keep = mask & (vals % 2 == 1)
    return [int(v) for v in vals[keep]]


def tau_sieve(limit: int) -> np.ndarray:
    """Divisor counts tau(0..limit); entry 0 is unused."""
    out = np.zeros(limit + 1, dtype=np.int64)
    for k in range(1, limit + 1):
        out[k::k] += 1
    return out


@dataclass(frozen=True)
class TwistMember:
    d: int
    chi: np.ndarray = field(repr=False, compare=False)

    @property
    def disc(self) -> int:
        return 8 * self.d

    def char(self, n):
        """chi_{8d}(n) for an int or integer array n >= 0."""
        return self.chi[np.asarray(n) % self.disc]


def twist_member(d: int) -> TwistMember:
    if d <= 0 or d % 2 == 0 or not is_squarefree(d):
        raise DomainError(f"d={d} is not odd, positive and square-free")
    return TwistMember(d, character_table(8 * d))


@dataclass
class TwistFamily:
    """Odd square-free d with X < 8d < 2X, i.e. 8d/X inside the support of the window."""

    X: float
    members: list[TwistMember]

    @classmethod
    def for_scale(cls, X: float, support: tuple[float, float] = (1.0, 2.0)) -> "TwistFamily":
        lo, hi = support
        ds = squarefree_odd_in(lo * X / 8.0, hi * X / 8.0)
        return cls(X, [twist_member(d) for d in ds])

    @property
    def ds(self) -> list[int]:
        return [m.d for m in self.members]

    def __len__(self) -> int:
        return len(self.members)
