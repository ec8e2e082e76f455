"""Truncated Laurent series in one variable.

A series is ``sum_k coeffs[k] s^(low + k) + O(s^(low + len))``.  Ring
operations keep exactly the terms that are determined by the operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OrderError

DEFAULT_ORDER = 8


@dataclass(frozen=True)
class TruncatedLaurent:
    low: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex).copy())
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("coefficient vector must be 1-d and non-empty")

    # constructors

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        v = np.zeros(order, dtype=complex)
        v[0] = c
        return cls(0, v)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        v = np.zeros(order, dtype=complex)
        v[0] = 1.0
        return cls(k, v)

    @classmethod
    def taylor(cls, coeffs) -> "TruncatedLaurent":
        return cls(0, coeffs)

    @classmethod
    def exp_poly(cls, scale: complex, power: int = 1, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        """exp(scale * s^power) truncated at s^order."""
        v = np.zeros(order, dtype=complex)
        for j in range(0, (order - 1) // power + 1):
            v[j * power] = scale**j / math.factorial(j)
        return cls(0, v)

    # bookkeeping

    @property
    def order(self) -> int:
        return self.coeffs.size

    @property
    def top(self) -> int:
        """First exponent not represented."""
        return self.low + self.order

    def coefficient(self, k: int) -> complex:
        if k >= self.top:
            raise OrderError(f"coefficient of s^{k} not determined (series known below s^{self.top})")
        if k < self.low:
            return 0j
        return complex(self.coeffs[k - self.low])

    def residue(self) -> complex:
        return self.coefficient(-1)

    def truncate(self, top: int) -> "TruncatedLaurent":
        top = min(top, self.top)
        if top <= self.low:
            raise OrderError("truncation leaves no terms")
        return TruncatedLaurent(self.low, self.coeffs[: top - self.low])

    def normalized(self) -> "TruncatedLaurent":
        """Drop leading zero coefficients (keeps at least one term)."""
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0 or nz[0] == 0:
            return self
        k = min(int(nz[0]), self.order - 1)
        return TruncatedLaurent(self.low + k, self.coeffs[k:])

    # arithmetic

    def __add__(self, other) -> "TruncatedLaurent":
        if not isinstance(other, TruncatedLaurent):
            other = TruncatedLaurent.constant(other, max(self.top, 1))
        low = min(self.low, other.low)
        top = min(self.top, other.top)
        if top <= low:
            raise OrderError("sum has no determined terms")
        v = np.zeros(top - low, dtype=complex)
        for ser in (self, other):
            n = min(ser.order, top - ser.low)
            v[ser.low - low : ser.low - low + n] += ser.coeffs[:n]
        return TruncatedLaurent(low, v)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedLaurent":
        return TruncatedLaurent(self.low, -self.coeffs)

    def __sub__(self, other) -> "TruncatedLaurent":
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedLaurent":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedLaurent":
        if not isinstance(other, TruncatedLaurent):
            return TruncatedLaurent(self.low, self.coeffs * other)
        n = min(self.order, other.order)
        v = np.convolve(self.coeffs[:n], other.coeffs[:n])[:n]
        return TruncatedLaurent(self.low + other.low, v)

    __rmul__ = __mul__

    def invert(self) -> "TruncatedLaurent":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("leading coefficient is zero; series is not a unit")
        n = self.order
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0 / c0
        for k in range(1, n):
            out[k] = -np.dot(self.coeffs[1 : k + 1], out[k - 1 :: -1][:k]) / c0
        return TruncatedLaurent(-self.low, out)

    def __truediv__(self, other) -> "TruncatedLaurent":
        if isinstance(other, TruncatedLaurent):
            return self * other.invert()
        return TruncatedLaurent(self.low, self.coeffs / other)

    def shift(self, k: int) -> "TruncatedLaurent":
        """Multiply by s^k."""
        return TruncatedLaurent(self.low + k, self.coeffs)

    def derivative(self) -> "TruncatedLaurent":
        exps = np.arange(self.low, self.top)
        v = self.coeffs * exps
        if self.low == 0:
            return TruncatedLaurent(0, v[1:]) if self.order > 1 else TruncatedLaurent(0, [0.0])
        return TruncatedLaurent(self.low - 1, v)

    def __call__(self, s):
        """Evaluate the truncated sum (useful for spot checks only)."""
        s = np.asarray(s, dtype=complex)
        exps = np.arange(self.low, self.top)
        return np.sum(self.coeffs * s[..., None] ** exps, axis=-1)

    def allclose(self, other: "TruncatedLaurent", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        low = min(self.low, other.low)
        top = min(self.top, other.top)
        a = np.array([self.coefficient(k) for k in range(low, top)])
        b = np.array([other.coefficient(k) for k in range(low, top)])
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))
