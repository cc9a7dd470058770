r"""Scalar special functions.

Legendre polynomials and their derivatives, the kernel

.. math::

    s_l(\zeta) = \left(\frac{1}{\zeta}\frac{d}{d\zeta}\right)^l
    \frac{\sinh\zeta}{\zeta}
    = \sum_{j\ge l} \frac{2^l j!}{(j-l)!} \frac{\zeta^{2(j-l)}}{(2j+1)!},

spherical Bessel functions :math:`j_l(\zeta) = \zeta^l s_l(i\zeta)` and
spherical Hankel functions of the first kind, plus the factorial helpers
used by every other module.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError, SingularityError

__all__ = [
    "factorial",
    "log_factorial",
    "double_factorial",
    "factorial_ratio",
    "legendre_p",
    "legendre_dm",
    "s_kernel",
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_hankel1",
]

_MU_TOL = 1e-12
_SERIES_MAX = 8.0


# -- factorials ---------------------------------------------------------------

def factorial(n: int):
    """n! as an exact integer for n <= 20, as a float beyond."""
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    if n <= 20:
        return math.factorial(n)
    return math.exp(math.lgamma(n + 1))


def log_factorial(n: int) -> float:
    """log(n!) via the log-gamma function."""
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.lgamma(n + 1)


def double_factorial(n: int) -> int:
    """(n)!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def factorial_ratio(num, den) -> float:
    """prod(k! for k in num) / prod(k! for k in den), evaluated in log space.

    Returns 0.0 when any entry of ``den`` is negative (the factorial of a
    negative integer is taken as infinite) and raises if ``num`` has one.
    """
    if any(k < 0 for k in den):
        return 0.0
    s = sum(log_factorial(k) for k in num) - sum(log_factorial(k) for k in den)
    return math.exp(s)


# -- Legendre -----------------------------------------------------------------

def _check_mu(mu):
    mu = np.asarray(mu, dtype=float)
    if np.any(np.abs(mu) > 1.0 + _MU_TOL):
        raise DomainError("Legendre argument outside [-1, 1]")
    return np.clip(mu, -1.0, 1.0)


def legendre_p(l: int, mu):
    """Legendre polynomial P_l(mu) by the upward three-term recurrence.

    ``mu`` may be a scalar or an array; the return type follows it.
    """
    if l < 0:
        raise DomainError(f"negative degree {l}")
    scalar = np.ndim(mu) == 0
    x = _check_mu(mu)
    p_prev = np.ones_like(x)
    if l == 0:
        out = p_prev
    else:
        p = x.copy()
        for k in range(1, l):
            p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        out = p
    return float(out) if scalar else out


def legendre_dm(l: int, m: int, mu):
    """m-th derivative d^m P_l / d mu^m.

    Uses the associated-Legendre recurrence with the (1 - mu^2)^{m/2}
    factor stripped, so it is regular at mu = +-1:

        (l-m+1) Q_{l+1} = (2l+1) mu Q_l - (l+m) Q_{l-1},  Q_m = (2m-1)!!
    """
    if l < 0 or m < 0:
        raise DomainError(f"invalid degree/order ({l}, {m})")
    scalar = np.ndim(mu) == 0
    x = _check_mu(mu)
    if m > l:
        out = np.zeros_like(x)
        return 0.0 if scalar else out
    q_prev = np.zeros_like(x)
    q = np.full_like(x, float(double_factorial(2 * m - 1)))
    for k in range(m, l):
        q_prev, q = q, ((2 * k + 1) * x * q - (k + m) * q_prev) / (k - m + 1)
    return float(q) if scalar else q


# -- the s_l kernel and spherical Bessel functions -----------------------------

def _s_series(l: int, zeta2: complex) -> complex:
    # leading term 2^l l!/(2l+1)! = 1/(2l+1)!!
    term = complex(1.0 / double_factorial(2 * l + 1)) if l < 150 else complex(
        math.exp(l * math.log(2.0) + math.lgamma(l + 1) - math.lgamma(2 * l + 2)))
    total = term
    k = 0
    while True:
        term *= zeta2 / (2.0 * (k + 1) * (2 * l + 2 * k + 3))
        total += term
        k += 1
        if term == 0 or abs(term) < 1e-18 * abs(total):
            return total
        if k > 10000:
            raise DomainError("s_l series failed to converge")


def _i_closed(l: int, z: complex) -> complex:
    """Modified spherical Bessel i_l(z) = z^l s_l(z) from its finite
    exponential form; accurate when |z| exceeds the degree."""
    plus = 0j
    minus = 0j
    for k in range(l + 1):
        a = math.exp(math.lgamma(l + k + 1) - math.lgamma(k + 1) - math.lgamma(l - k + 1))
        w = a / (2 * z) ** k
        plus += (-1) ** k * w
        minus += w
    return (cmath.exp(z) * plus + (-1) ** (l + 1) * cmath.exp(-z) * minus) / (2 * z)


def s_kernel(l: int, zeta2) -> complex:
    """s_l evaluated at a point given by its square zeta^2.

    The even power series is summed directly (term ratio
    zeta^2 / (2(k+1)(2l+2k+3))) until the term drops below 1e-18 of the
    partial sum. For |zeta| > l + 2 off the positive real axis, where the
    series cancels, the finite exponential form of i_l(zeta)/zeta^l is
    used instead.
    """
    if l < 0:
        raise DomainError(f"negative degree {l}")
    zeta2 = complex(zeta2)
    positive_real = zeta2.imag == 0.0 and zeta2.real >= 0.0
    if positive_real or abs(zeta2) <= (l + 2) ** 2:
        return _s_series(l, zeta2)
    z = cmath.sqrt(zeta2)
    return _i_closed(l, z) / z ** l


def _miller_j(l: int, x: float) -> float:
    n = max(l, int(x)) + 32 + int(4.0 * x ** (1.0 / 3.0))
    f_next, f = 0.0, 1e-30
    f_l = 0.0
    f1 = 0.0
    for k in range(n, 0, -1):
        if k == l:
            f_l = f
        if k == 1:
            f1 = f
        f_next, f = f, (2 * k + 1) / x * f - f_next
        if abs(f) > 1e250:
            f_next *= 1e-250
            f *= 1e-250
            f_l *= 1e-250
            f1 *= 1e-250
    if l == 0:
        f_l = f
    j0 = math.sin(x) / x
    j1 = math.sin(x) / x ** 2 - math.cos(x) / x
    scale = j0 / f if abs(j0) >= abs(j1) else j1 / f1
    return f_l * scale


def sph_bessel_j(l: int, zeta: float) -> float:
    """Spherical Bessel function j_l(zeta) for real zeta.

    Series (zeta^l s_l(-zeta^2)) for zeta <= min(l + 2, 8), downward
    Miller recurrence normalised against j_0 or j_1 beyond. The series
    cancels badly past zeta ~ 8 even when zeta < l.
    """
    if l < 0:
        raise DomainError(f"negative degree {l}")
    x = float(zeta)
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    sign = 1.0
    if x < 0:
        x = -x
        sign = (-1.0) ** l
    if x <= min(l + 2, _SERIES_MAX):
        val = (x ** l * _s_series(l, -x * x)).real
    else:
        val = _miller_j(l, x)
    return sign * val


def sph_bessel_y(l: int, zeta: float) -> float:
    """Spherical Neumann function y_l by upward recurrence (internal)."""
    x = float(zeta)
    if x == 0.0:
        raise SingularityError("y_l is singular at 0")
    y_prev = -math.cos(x) / x
    if l == 0:
        return y_prev
    y = -math.cos(x) / x ** 2 - math.sin(x) / x
    for k in range(1, l):
        y_prev, y = y, (2 * k + 1) / x * y - y_prev
    return y


def sph_hankel1(l: int, zeta: float) -> complex:
    """Spherical Hankel function of the first kind h_l^(1) = j_l + i y_l."""
    if l < 0:
        raise DomainError(f"negative degree {l}")
    if float(zeta) == 0.0:
        raise SingularityError("h_l^(1) is singular at 0")
    return complex(sph_bessel_j(l, zeta), sph_bessel_y(l, zeta))
