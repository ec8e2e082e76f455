"""Special functions for the smoothed sums.

The smoothing kernel of the approximate functional equation is the upper
incomplete gamma function, omega_alpha(xi) = Gamma(alpha + kappa/2, 2 pi xi).
Everything here works on numpy arrays; scalar inputs come back as scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, interpolate, special

from .errors import DomainError, PoleError

TWO_PI = 2.0 * math.pi
EULER_GAMMA = 0.57721566490153286060651209

# B_2 .. B_20
_BERNOULLI = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798, -174611 / 330]


def _out(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


# --- Gamma -------------------------------------------------------------------


def _loggamma_shifted(z: np.ndarray) -> np.ndarray:
    """log Gamma(z) for Re z >= 0.5 via upward shift and the Stirling series."""
    shift = np.maximum(0, np.ceil(20.0 - z.real)).astype(int)
    m = int(shift.max(initial=0))
    w = z + shift
    acc = np.zeros_like(z)
    # divide back out z(z+1)...(z+shift-1), one factor per step while still shifting
    for k in range(m):
        active = k < shift
        acc = acc + np.where(active, np.log(np.where(active, z + k, 1.0)), 0.0)
    series = np.zeros_like(w)
    w2 = w * w
    wp = w.copy()
    for k, b in enumerate(_BERNOULLI, start=1):
        series = series + b / (2 * k * (2 * k - 1) * wp)
        wp = wp * w2
    return (w - 0.5) * np.log(w) - w + 0.5 * math.log(TWO_PI) + series - acc


def gamma_complex(z):
    """Gamma(z) for complex z (Stirling + recursion + reflection)."""
    z = np.asarray(z, dtype=complex)
    if np.any((z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))):
        raise PoleError("Gamma has poles at the non-positive integers")
    left = z.real < 0.5
    zz = np.where(left, 1.0 - z, z)
    g = np.exp(_loggamma_shifted(zz))
    out = np.where(left, math.pi / (np.sin(math.pi * z) * np.where(left, g, 1.0)), g)
    return _out(out)


# --- incomplete gamma ----------------------------------------------------------


def _upper_gamma_complex(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = np.empty(np.broadcast(a, x).shape, dtype=complex)
    a, x = np.broadcast_arrays(a, x)
    ser = x < a.real + 1.0
    if np.any(ser):
        aa, xx = a[ser], x[ser]
        term = 1.0 / aa
        total = term.copy()
        for k in range(1, 600):
            term = term * xx / (aa + k)
            total = total + term
            if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
                break
        lower = np.exp(aa * np.log(xx) - xx) * total
        out[ser] = np.asarray(gamma_complex(aa)) - lower
    cf = ~ser
    if np.any(cf):
        aa, xx = a[cf], x[cf]
        tiny = 1e-300
        b = xx + 1.0 - aa
        c = np.full_like(b, 1.0 / tiny)
        d = 1.0 / b
        h = d.copy()
        for i in range(1, 1000):
            an = -i * (i - aa)
            b = b + 2.0
            d = an * d + b
            d = np.where(np.abs(d) < tiny, tiny, d)
            c = b + an / c
            c = np.where(np.abs(c) < tiny, tiny, c)
            d = 1.0 / d
            delta = d * c
            h = h * delta
            if np.all(np.abs(delta - 1.0) < 1e-16):
                break
        out[cf] = np.exp(aa * np.log(xx) - xx) * h
    return out


def upper_gamma(a, x):
    """Upper incomplete gamma Gamma(a, x) for x >= 0.

    Real a > 0 goes through scipy's regularized function; complex a uses the
    power series below x = Re(a)+1 and a Lentz continued fraction above.
    """
    a = np.asarray(a)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Gamma(a, x) needs x >= 0")
    if not np.iscomplexobj(a):
        a = a.astype(float)
        if np.any(a <= 0):
            raise DomainError("real shift needs a > 0")
        return _out(special.gammaincc(a, x) * special.gamma(a))
    if np.any(a.real <= 0) and np.any(x == 0):
        raise DomainError("Gamma(a, 0) diverges for Re(a) <= 0")
    xs = np.where(x == 0, 1e-300, x)
    return _out(_upper_gamma_complex(a.astype(complex), xs))


def upper_gamma_integer(n: int, x):
    """Gamma(n, x) = (n-1)! e^-x sum_{k<n} x^k/k! for integer n >= 1."""
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, n):
        term = term * x / k
        total = total + term
    return _out(math.factorial(n - 1) * np.exp(-x) * total)


def upper_gamma_grid(a: complex, delta: float, count: int, nodes: int = 10,
                     far_nodes: int | None = None, near_cells: int = 32) -> np.ndarray:
    """Gamma(a, n*delta) for n = 1..count by cell-wise Gauss-Legendre.

    Integrates t^(a-1) e^-t over each cell [n delta, (n+1) delta] and sums the
    cells from the right, anchored by one continued-fraction value at the end.
    Cells far from t = 0 (relative width < 1/near_cells) need fewer nodes;
    wide cells (large delta) keep six because e^-t varies across them.
    """
    if far_nodes is None:
        far_nodes = 6 if delta > 0.02 else 4
    left = delta * np.arange(1, count + 1, dtype=float)
    cells = np.zeros(count, dtype=complex)
    am1 = complex(a) - 1.0
    split = min(count, near_cells)
    for lo, hi, q in ((0, split, nodes), (split, count, far_nodes)):
        if hi <= lo:
            continue
        u, w = np.polynomial.legendre.leggauss(q)
        acc = np.zeros(hi - lo, dtype=complex)
        for ui, wi in zip(u, w):
            t = left[lo:hi] + 0.5 * delta * (1.0 + ui)
            acc += wi * np.exp(am1 * np.log(t) - t)
        cells[lo:hi] = acc
    cells *= 0.5 * delta
    end = _upper_gamma_complex(np.array([complex(a)]), np.array([(count + 1) * delta]))[0]
    return np.cumsum(cells[::-1])[::-1] + end


# --- the AFE kernel and its shift derivative --------------------------------------


def omega(alpha, kappa: int, xi):
    """omega_alpha(xi) = Gamma(alpha + kappa/2, 2 pi xi)."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise DomainError("omega needs xi > 0")
    a = np.asarray(alpha) + kappa / 2
    if np.any(np.real(a) <= 0):
        raise DomainError("omega needs Re(alpha) + kappa/2 > 0")
    if not np.iscomplexobj(a) and a.ndim == 0 and float(a) == int(a):
        return upper_gamma_integer(int(a), TWO_PI * xi)
    return upper_gamma(a, TWO_PI * xi)


def omega_contour(alpha, kappa: int, xi: float, rtol: float = 1e-13) -> complex:
    """omega_alpha(xi) by trapezoid quadrature of its Mellin-Barnes integral.

    Independent oracle for ``omega``: the line Re(s) = c is moved towards the
    saddle of |x^-s Gamma(a+s)| so no cancellation occurs for large xi.
    """
    if xi <= 0:
        raise DomainError("omega needs xi > 0")
    a = complex(alpha) + kappa / 2
    x = TWO_PI * xi
    c = max(1.0, x - a.real)
    h = min(0.1, TWO_PI * c / 40.0)

    def integrand(t):
        s = c + 1j * t
        return np.exp(special.loggamma(a + s) - s * math.log(x)) / s

    span = 10.0 * math.sqrt(a.real + c) + 60.0
    prev = None
    while True:
        t = np.arange(-span, span + h / 2, h)
        val = h * np.sum(integrand(t)) / TWO_PI
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return complex(val)
        prev = val
        span *= 1.5


def omega_dalpha(alpha: float, kappa: int, xi: float) -> float:
    """d/dalpha omega_alpha(xi) = int_{2 pi xi}^inf t^(a-1) ln t e^-t dt at a = alpha + kappa/2."""
    if xi <= 0:
        raise DomainError("omega needs xi > 0")
    a = float(alpha) + kappa / 2
    if a <= 0:
        raise DomainError("omega needs alpha + kappa/2 > 0")
    x = TWO_PI * xi
    f = lambda t: math.exp((a - 1) * math.log(t) - t) * math.log(t)
    peak = max(a - 1.0, x)
    pieces = [x] + sorted(p for p in (1.0, peak, peak + 10 * math.sqrt(a) + 10) if p > x) + [math.inf]
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        val, _ = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    return total


def omega_dalpha_fd(alpha: float, kappa: int, xi: float, h: float = 1e-5) -> float:
    """Richardson-extrapolated central difference of omega in alpha (oracle only)."""
    f = lambda al: float(np.real(upper_gamma(al + kappa / 2, TWO_PI * xi)))
    d1 = (f(alpha + h) - f(alpha - h)) / (2 * h)
    d2 = (f(alpha + h / 2) - f(alpha - h / 2)) / h
    return (4 * d2 - d1) / 3


def dgamma_upper_integer(n: int, x):
    """d/da Gamma(a, x) at integer a = n, from E1 and upward recurrence.

    J_1 = ln x e^-x + E1(x);  J_{m+1} = m J_m + Gamma(m, x) + x^m ln x e^-x.
    """
    x = np.asarray(x, dtype=float)
    lx = np.log(x)
    ex = np.exp(-x)
    j = lx * ex + special.exp1(x)
    g = ex.copy()  # Gamma(1, x)
    xm = np.ones_like(x)
    for m in range(1, n):
        xm = xm * x
        j = m * j + g + xm * lx * ex
        g = m * g + xm * ex  # Gamma(m+1, x)
    return _out(j)


def derivative_kernel(n: int, x):
    """W(x) = d/da Gamma(a, x) - ln(x) Gamma(a, x) at a = n; positive for x > 0."""
    x = np.asarray(x, dtype=float)
    return _out(np.asarray(dgamma_upper_integer(n, x)) - np.log(x) * np.asarray(upper_gamma_integer(n, x)))


@dataclass
class KernelGrid:
    """Cubic-spline tables of Gamma(a, x) and W(x) in log-log coordinates.

    Geometric grid on [x_min, x_max]; outside it the exact closed forms are used.
    """

    a: int
    points: int = 4000
    x_min: float = 1e-6
    x_max: float = 60.0
    _g: interpolate.CubicSpline = field(init=False, repr=False)
    _w: interpolate.CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        lx = np.linspace(math.log(self.x_min), math.log(self.x_max), self.points)
        x = np.exp(lx)
        self._g = interpolate.CubicSpline(lx, np.log(upper_gamma_integer(self.a, x)))
        self._w = interpolate.CubicSpline(lx, np.log(derivative_kernel(self.a, x)))

    def _eval(self, spline, exact, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.x_min) & (x <= self.x_max)
        out = np.empty_like(x)
        out[inside] = np.exp(spline(np.log(x[inside])))
        if not np.all(inside):
            out[~inside] = exact(self.a, x[~inside])
        return out

    def gamma(self, x):
        return self._eval(self._g, upper_gamma_integer, x)

    def dkernel(self, x):
        return self._eval(self._w, derivative_kernel, x)


@lru_cache(maxsize=8)
def kernel_grid(a: int, points: int = 4000) -> KernelGrid:
    return KernelGrid(a, points)


# --- zeta near s = 1 --------------------------------------------------------------

EM_CUTOFF = 10_000


def zeta_one_plus(s, cutoff: int = EM_CUTOFF):
    """zeta(1+s) by Euler-Maclaurin: partial sum to cutoff-1, tail through B_8."""
    s = np.asarray(s, dtype=complex)
    if np.any(s == 0):
        raise PoleError("zeta(1+s) has a pole at s=0")
    flat = s.ravel()
    w = 1.0 + flat
    m = np.arange(1, cutoff, dtype=float)
    logm = np.log(m)
    head = np.empty_like(flat)
    for i in range(0, flat.size, 256):
        blk = w[i : i + 256]
        head[i : i + 256] = np.exp(-np.outer(blk, logm)).sum(axis=1)
    M = float(cutoff)
    lM = math.log(M)
    tail = np.exp(-flat * lM) / flat + 0.5 * np.exp(-w * lM)
    rising = w.copy()  # w (w+1) ... (w+2j-2)
    for j in range(1, 5):
        tail = tail + _BERNOULLI[j - 1] / math.factorial(2 * j) * rising * np.exp(-(w + 2 * j - 1) * lM)
        rising = rising * (w + 2 * j - 1) * (w + 2 * j)
    return _out((head + tail).reshape(s.shape))


@lru_cache(maxsize=4)
def zeta_laurent(order: int = 10, radius: float = 1.0, nodes: int = 64) -> tuple[float, ...]:
    """Coefficients c_0..c_order of zeta(1+s) - 1/s = sum c_k s^k.

    Cauchy integrals of the Euler-Maclaurin values on |s| = radius.
    c_k = (-1)^k gamma_k / k! with gamma_k the Stieltjes constants.
    """
    theta = TWO_PI * np.arange(nodes) / nodes
    s = radius * np.exp(1j * theta)
    g = np.asarray(zeta_one_plus(s)) - 1.0 / s
    coef = np.fft.fft(g) / nodes
    return tuple(float((coef[k] / radius**k).real) for k in range(order + 1))


def stieltjes(k: int) -> float:
    """Stieltjes constant gamma_k (gamma_0 is Euler's constant)."""
    c = zeta_laurent(max(k, 10))[k]
    return (-1) ** k * math.factorial(k) * c


# --- the window Phi ---------------------------------------------------------------

PHI_SUPPORT = (1.0, 2.0)
_GL_NODES = 256


def phi(x):
    """Bump exp(-1/((x-1)(2-x))) on (1, 2), zero elsewhere."""
    x = np.asarray(x, dtype=float)
    inside = (x > 1.0) & (x < 2.0)
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = np.exp(-1.0 / ((xi - 1.0) * (2.0 - xi)))
    return _out(out)


@lru_cache(maxsize=1)
def _phi_nodes():
    u, w = np.polynomial.legendre.leggauss(_GL_NODES)
    x = 1.5 + 0.5 * u
    return x, 0.5 * w * np.asarray(phi(x))


def mellin_phi(s, log_power: int = 0):
    """Phi~(s) = int Phi(x) x^(s-1) dx; ``log_power`` inserts (ln x)^k (the k-th s-derivative)."""
    s = np.asarray(s, dtype=complex)
    x, wphi = _phi_nodes()
    lx = np.log(x)
    weights = wphi * lx**log_power
    return _out(np.exp(np.multiply.outer(s - 1.0, lx)) @ weights)
