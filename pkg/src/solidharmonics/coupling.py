r"""Wigner 3j symbols, Gaunt integrals and triple products of simple harmonics.

For three indices :math:`(l_b,m_b), (l_c,m_c), (l_d,m_d)` the derived
quantities are :math:`\lambda_b = l_c+l_d-l_b` (and cyclically),
:math:`L = l_b+l_c+l_d`, :math:`M = m_b+m_c+m_d`, :math:`\mu = l-m`,
:math:`\nu = l+m`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HarmonicIndexError, NotNullVectorError
from .polynom import as_vec3, cdot, is_null
from .specfun import log_factorial

__all__ = [
    "TripleIndex",
    "selection_ok",
    "wigner_3j",
    "wigner_3j_zero",
    "gaunt",
    "triple_product_simple",
]


@dataclass(frozen=True)
class TripleIndex:
    """Three harmonic indices (l_b, m_b), (l_c, m_c), (l_d, m_d)."""

    lb: int
    mb: int
    lc: int
    mc: int
    ld: int
    md: int

    def __post_init__(self):
        for l, m in ((self.lb, self.mb), (self.lc, self.mc), (self.ld, self.md)):
            if l < 0 or abs(m) > l:
                raise HarmonicIndexError(f"invalid harmonic index ({l}, {m})")

    @classmethod
    def coerce(cls, t) -> "TripleIndex":
        if isinstance(t, TripleIndex):
            return t
        flat = []
        for item in t:
            if isinstance(item, (tuple, list)):
                flat.extend(item)
            else:
                flat.append(item)
        if len(flat) != 6:
            raise ValueError("a triple needs six integers lb, mb, lc, mc, ld, md")
        return cls(*(int(v) for v in flat))

    @property
    def L(self) -> int:
        return self.lb + self.lc + self.ld

    @property
    def M(self) -> int:
        return self.mb + self.mc + self.md

    @property
    def lam_b(self) -> int:
        return self.lc + self.ld - self.lb

    @property
    def lam_c(self) -> int:
        return self.lb + self.ld - self.lc

    @property
    def lam_d(self) -> int:
        return self.lb + self.lc - self.ld

    def zero_m(self) -> "TripleIndex":
        return TripleIndex(self.lb, 0, self.lc, 0, self.ld, 0)


def _triangle(t: TripleIndex) -> bool:
    return min(t.lam_b, t.lam_c, t.lam_d) >= 0


def selection_ok(t) -> bool:
    """M = 0, triangle inequalities, and L even."""
    t = TripleIndex.coerce(t)
    return t.M == 0 and _triangle(t) and t.L % 2 == 0


def _log_delta(t: TripleIndex) -> float:
    return (log_factorial(t.lam_b) + log_factorial(t.lam_c) + log_factorial(t.lam_d)
            - log_factorial(t.L + 1))


def wigner_3j(t) -> float:
    """Wigner 3j symbol (l_b l_c l_d; m_b m_c m_d) by the Racah sum.

    Summation over every j for which all factorial arguments are
    nonnegative; each term is built in log space and the alternating sum
    is accumulated with :func:`math.fsum`.
    """
    t = TripleIndex.coerce(t)
    if t.M != 0 or not _triangle(t):
        return 0.0
    mu_b, mu_c = t.lb - t.mb, t.lc - t.mc
    nu_b, nu_c = t.lb + t.mb, t.lc + t.mc
    mu_d, nu_d = t.ld - t.md, t.ld + t.md
    lam_d = t.lam_d
    j_lo = max(0, lam_d - nu_b, lam_d - mu_c)
    j_hi = min(lam_d, mu_b, nu_c)
    if j_lo > j_hi:
        return 0.0
    log_pre = 0.5 * (_log_delta(t) + sum(log_factorial(k) for k in
                                           (mu_b, nu_b, mu_c, nu_c, mu_d, nu_d)))
    terms = []
    for j in range(j_lo, j_hi + 1):
        log_den = (log_factorial(j) + log_factorial(lam_d - j) + log_factorial(mu_b - j)
                   + log_factorial(nu_c - j) + log_factorial(nu_b - lam_d + j)
                   + log_factorial(mu_c - lam_d + j))
        terms.append((-1) ** j * math.exp(log_pre - log_den))
    terms.sort(key=abs, reverse=True)
    sign = (-1) ** ((t.lb + t.lc - t.md) % 2)
    return sign * math.fsum(terms)


def wigner_3j_zero(lb: int, lc: int, ld: int) -> float:
    """Closed form of (l_b l_c l_d; 0 0 0)."""
    t = TripleIndex(lb, 0, lc, 0, ld, 0)
    if not selection_ok(t):
        return 0.0
    half = t.L // 2
    logv = (0.5 * _log_delta(t) + log_factorial(half) - log_factorial(t.lam_b // 2)
            - log_factorial(t.lam_c // 2) - log_factorial(t.lam_d // 2))
    return (-1) ** (half % 2) * math.exp(logv)


def gaunt(t) -> float:
    """Integral of Y_{l_b m_b} Y_{l_c m_c} Y_{l_d m_d} over the unit sphere."""
    t = TripleIndex.coerce(t)
    if not selection_ok(t):
        return 0.0
    pre = math.sqrt((2 * t.lb + 1) * (2 * t.lc + 1) * (2 * t.ld + 1) / (4 * math.pi))
    return pre * wigner_3j_zero(t.lb, t.lc, t.ld) * wigner_3j(t)


def triple_product_simple(b, c, d, lb: int, lc: int, ld: int) -> complex:
    """Integral of (b.e)^lb (c.e)^lc (d.e)^ld over the unit sphere for null b, c, d."""
    vecs = [as_vec3(v) for v in (b, c, d)]
    for v in vecs:
        if not is_null(v):
            raise NotNullVectorError("triple product requires null vectors")
    b, c, d = vecs
    L = lb + lc + ld
    lam = (lc + ld - lb, lb + ld - lc, lb + lc - ld)
    if min(lam) < 0 or any(k % 2 for k in lam):
        return 0j
    hb, hc, hd = (k // 2 for k in lam)
    logmag = (math.log(4 * math.pi) + (L / 2) * math.log(2.0) + log_factorial(L // 2)
              + log_factorial(lb) + log_factorial(lc) + log_factorial(ld)
              - log_factorial(L + 1) - log_factorial(hb) - log_factorial(hc)
              - log_factorial(hd))
    prod = cdot(c, d) ** hb * cdot(b, c) ** hd * cdot(b, d) ** hc
    return complex(math.exp(logmag) * prod)
