r"""Surface, solid and Maxwell harmonics.

Phase convention (Condon-Shortley):

.. math::

    Y_{lm}(\theta,\phi) = \sqrt{\frac{2l+1}{4\pi}\frac{(l-m)!}{(l+m)!}}
    (-1)^m \sin^m\theta\, e^{im\phi} \frac{d^m P_l}{d\mu^m}, \qquad m \ge 0,

with :math:`Y_{l,-m} = (-1)^m \overline{Y_{lm}}`. This matches the usual
physics convention (Jackson, Sakurai, ``scipy.special.sph_harm``).

The irregular harmonics :math:`V_{lm}` are Maxwell harmonics: the
:math:`(l-m)`-fold derivative along :math:`z` and :math:`m`-fold derivative
along :math:`\partial_\eta = (\partial_x + i\partial_y)/2` of :math:`1/r`.
They are related to :math:`Y_{lm}` by :math:`Y_{lm} = C_{lm} r^{l+1} V_{lm}`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import HarmonicIndexError, NotNullVectorError, SingularityError
from .polynom import (HomogeneousPoly, as_vec3, evaluate, is_null,
                      spherical_components)
from .specfun import legendre_dm, log_factorial

__all__ = [
    "HarmonicIndex",
    "MaxwellHarmonic",
    "maxwell_seed",
    "apply_pole",
    "maxwell_from_poles",
    "zonal_harmonic",
    "C_lm",
    "vlm_numerator",
    "eval_maxwell_Vlm",
    "eval_V",
    "vlm_closed_form",
    "eval_Y",
    "eval_Y_dir",
    "eval_Y_row",
    "eval_solid",
    "solid_poly",
    "generating_coefficients",
]

E_Z = np.array([0.0, 0.0, 1.0], dtype=complex)
# pole realising d/d(eta) = (d/dx + i d/dy)/2
E_ETA_POLE = np.array([0.5, 0.5j, 0.0], dtype=complex)

_POLE_TOL = 1e-14


@dataclass(frozen=True)
class HarmonicIndex:
    """Degree/order pair with |m| <= l."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise HarmonicIndexError(f"invalid harmonic index (l={self.l}, m={self.m})")

    @classmethod
    def coerce(cls, idx) -> "HarmonicIndex":
        if isinstance(idx, HarmonicIndex):
            return idx
        l, m = idx
        return cls(int(l), int(m))

    def __iter__(self):
        yield self.l
        yield self.m


def _idx(idx, m=None) -> HarmonicIndex:
    return HarmonicIndex.coerce(idx if m is None else (idx, m))


# -- Maxwell harmonics ----------------------------------------------------------

@dataclass(frozen=True)
class MaxwellHarmonic:
    """V_l(r) = numerator(r) / r^(2l+1), an l-fold directional derivative of 1/r."""

    l: int
    numerator: HomogeneousPoly

    def __post_init__(self):
        if self.numerator.degree != self.l and not self.numerator.is_zero():
            raise ValueError("numerator degree must equal l")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        rr = np.linalg.norm(r, axis=-1)
        if np.any(rr == 0):
            raise SingularityError("Maxwell harmonic is singular at the origin")
        return evaluate(self.numerator, r) / rr ** (2 * self.l + 1)

    def surface(self, r):
        """r^(l+1) V_l, which depends only on the direction of r."""
        r = np.asarray(r, dtype=float)
        rr = np.linalg.norm(r, axis=-1)
        return self(r) * rr ** (self.l + 1)


def maxwell_seed() -> MaxwellHarmonic:
    """V_0 = 1/r."""
    return MaxwellHarmonic(0, HomogeneousPoly.constant(1.0))


def apply_pole(v: MaxwellHarmonic, e) -> MaxwellHarmonic:
    """Differentiate V = P/r^(2l+1) along e.

    (e.grad)(P/r^(2l+1)) = [r^2 (e.grad)P - (2l+1)(e.r) P] / r^(2l+3).
    """
    e = as_vec3(e)
    p = v.numerator
    term1 = HomogeneousPoly.r_squared() * p.dir_derivative(e) if p.degree > 0 else None
    term2 = HomogeneousPoly.linear(e) * p * (2 * v.l + 1)
    num = -term2 if term1 is None else term1 - term2
    return MaxwellHarmonic(v.l + 1, num)


def maxwell_from_poles(poles) -> MaxwellHarmonic:
    v = maxwell_seed()
    for e in poles:
        v = apply_pole(v, e)
    return v


def zonal_harmonic(e, l: int) -> MaxwellHarmonic:
    """Maxwell harmonic with all l poles equal to e."""
    return maxwell_from_poles([e] * l)


def C_lm(l: int, m: int) -> float:
    """Constant with Y_lm = C_lm r^(l+1) V_lm (valid for either sign of m)."""
    _idx(l, m)
    logmag = 0.5 * (math.log((2 * l + 1) / (4 * math.pi)) - log_factorial(l + m)
                    - log_factorial(l - m)) + m * math.log(2.0)
    return (-1) ** ((l + m) % 2) * math.exp(logmag)


@lru_cache(maxsize=None)
def vlm_numerator(l: int, m: int) -> HomogeneousPoly:
    """Numerator of V_lm (m >= 0) from the Maxwell engine."""
    idx = _idx(l, m)
    if idx.m < 0:
        raise HarmonicIndexError("vlm_numerator requires m >= 0")
    return maxwell_from_poles([E_ETA_POLE] * m + [E_Z] * (l - m)).numerator


def _norm(r):
    r = np.asarray(r, dtype=float)
    rr = np.linalg.norm(r, axis=-1)
    if np.any(rr == 0):
        raise SingularityError("irregular harmonic is singular at the origin")
    return r, rr


def eval_maxwell_Vlm(idx, r):
    """V_lm(r) for m >= 0 from the exact Maxwell numerator."""
    idx = _idx(idx)
    if idx.m < 0:
        raise HarmonicIndexError("eval_maxwell_Vlm requires m >= 0; use eval_V")
    r, rr = _norm(r)
    return evaluate(vlm_numerator(idx.l, idx.m), r) / rr ** (2 * idx.l + 1)


def eval_V(l: int, m: int, r):
    """V_lm for any m; V_{l,-m} = (-1)^m 4^m conj(V_lm), zero outside |m| <= l."""
    if l < 0 or abs(m) > l:
        r, _ = _norm(r)
        return np.zeros(r.shape[:-1], dtype=complex) if r.ndim > 1 else 0j
    if m >= 0:
        return eval_maxwell_Vlm((l, m), r)
    k = -m
    return (-1) ** k * 4.0 ** k * np.conj(eval_maxwell_Vlm((l, k), r))


def vlm_closed_form(idx, r):
    """(-1)^l (l-m)!/(2^m r^(l+1)) sin^m(theta) e^(i m phi) P_l^(m)(cos theta), m >= 0."""
    idx = _idx(idx)
    l, m = idx.l, idx.m
    if m < 0:
        raise HarmonicIndexError("closed form requires m >= 0")
    r, rr = _norm(r)
    x, y, z = r[..., 0], r[..., 1], r[..., 2]
    mu = np.clip(z / rr, -1.0, 1.0)
    # sin^m(theta) e^{i m phi} = ((x + i y)/r)^m
    ang = ((x + 1j * y) / rr) ** m
    scale = (-1) ** l * math.factorial(l - m) / 2.0 ** m
    return scale * ang * legendre_dm(l, m, mu) / rr ** (l + 1)


# -- surface harmonics ------------------------------------------------------------

def _y_norm(l: int, m: int) -> float:
    return math.exp(0.5 * (math.log((2 * l + 1) / (4 * math.pi))
                           + log_factorial(l - m) - log_factorial(l + m)))


def _y_from_parts(l, m, mu, sin_t, phase):
    """Y_lm from cos(theta), sin(theta) and e^{i phi} (arrays), any sign of m."""
    k = abs(m)
    poly = legendre_dm(l, k, mu)
    if k:
        sm = np.where(sin_t < _POLE_TOL, 0.0, sin_t ** k)
    else:
        sm = 1.0
    val = _y_norm(l, k) * (-1) ** k * sm * phase ** k * poly
    if m < 0:
        val = (-1) ** k * np.conj(val)
    return val


def eval_Y(idx, theta, phi, m=None):
    """Standard surface harmonic Y_lm(theta, phi).

    Parameters
    ----------
    idx : HarmonicIndex or (l, m) or int
        Index; pass ``l`` and ``m=`` separately if convenient.
    theta, phi : float or array_like
        Polar and azimuthal angles (broadcast together).

    Returns
    -------
    complex or ndarray of complex
    """
    idx = _idx(idx, m)
    scalar = np.ndim(theta) == 0 and np.ndim(phi) == 0
    th = np.asarray(theta, dtype=float)
    ph = np.asarray(phi, dtype=float)
    mu = np.cos(th)
    sin_t = np.abs(np.sin(th))
    phase = np.exp(1j * ph) * np.where(np.sin(th) < 0, -1.0, 1.0)
    val = _y_from_parts(idx.l, idx.m, mu, sin_t, phase)
    val = np.broadcast_to(val, np.broadcast(th, ph).shape)
    return complex(val) if scalar else np.array(val, dtype=complex)


def eval_Y_dir(idx, e, m=None):
    """Y_lm at the direction of the (nonzero) vector(s) e, shape (..., 3)."""
    idx = _idx(idx, m)
    e = np.asarray(e, dtype=float)
    scalar = e.ndim == 1
    rr = np.linalg.norm(e, axis=-1)
    if np.any(rr == 0):
        raise SingularityError("direction of the zero vector is undefined")
    x, y, z = e[..., 0], e[..., 1], e[..., 2]
    rho = np.hypot(x, y)
    mu = np.clip(z / rr, -1.0, 1.0)
    sin_t = rho / rr
    with np.errstate(invalid="ignore", divide="ignore"):
        phase = np.where(rho > 0, (x + 1j * y) / np.where(rho > 0, rho, 1.0), 1.0)
    val = _y_from_parts(idx.l, idx.m, mu, sin_t, phase)
    val = np.broadcast_to(val, rr.shape)
    return complex(val) if scalar else np.array(val, dtype=complex)


def eval_Y_row(l: int, e) -> np.ndarray:
    """All Y_lm, m = -l..l, at the direction(s) e; shape (2l+1,) + e.shape[:-1]."""
    if l < 0:
        raise HarmonicIndexError(f"negative degree {l}")
    e = np.asarray(e, dtype=float)
    rr = np.linalg.norm(e, axis=-1)
    if np.any(rr == 0):
        raise SingularityError("direction of the zero vector is undefined")
    x, y, z = e[..., 0], e[..., 1], e[..., 2]
    rho = np.hypot(x, y)
    mu = np.clip(z / rr, -1.0, 1.0)
    sin_t = rho / rr
    with np.errstate(invalid="ignore", divide="ignore"):
        phase = np.where(rho > 0, (x + 1j * y) / np.where(rho > 0, rho, 1.0), 1.0)
    out = np.empty((2 * l + 1,) + rr.shape, dtype=complex)
    for m in range(l + 1):
        val = _y_from_parts(l, m, mu, sin_t, phase)
        out[l + m] = val
        if m:
            out[l - m] = (-1) ** m * np.conj(val)
    return out


def eval_solid(kind: str, idx, r, m=None):
    """Regular r^l Y_lm or irregular Y_lm / r^(l+1) solid harmonic at r."""
    idx = _idx(idx, m)
    r = np.asarray(r, dtype=float)
    rr = np.linalg.norm(r, axis=-1)
    if kind == "regular":
        if np.all(rr > 0):
            return eval_Y_dir(idx, r) * rr ** idx.l
        # exact polynomial form is regular at the origin
        return evaluate(solid_poly(idx.l, idx.m), r)
    if kind == "irregular":
        if np.any(rr == 0):
            raise SingularityError("irregular solid harmonic is singular at the origin")
        return eval_Y_dir(idx, r) / rr ** (idx.l + 1)
    raise ValueError(f"unknown kind {kind!r}; expected 'regular' or 'irregular'")


@lru_cache(maxsize=None)
def solid_poly(l: int, m: int) -> HomogeneousPoly:
    """Harmonic polynomial r^l Y_lm(direction of r) as an exact HomogeneousPoly."""
    idx = _idx(l, m)
    if idx.m >= 0:
        return vlm_numerator(l, m) * C_lm(l, m)
    return solid_poly(l, -m).conj() * (-1) ** (-m)


# -- generating function ----------------------------------------------------------

def _spinor_of_null(b):
    """(s, t) with s^2 = b_xi, t^2 = b_eta and b_z = i sqrt(2) s t."""
    b_xi, b_eta, b_z = spherical_components(b)
    s = np.sqrt(complex(b_xi))
    t = np.sqrt(complex(b_eta))
    if abs(1j * math.sqrt(2.0) * s * t + b_z) < abs(1j * math.sqrt(2.0) * s * t - b_z):
        t = -t
    return complex(s), complex(t)


def generating_coefficients(b, l: int) -> np.ndarray:
    """Coefficients a_m with (b.e)^l = sum_m a_m Y_lm(e), m = -l..l.

    a_m = 2^(l/2) i^(l+m) l! sqrt(4 pi/(2l+1)) s^(l-m) t^(l+m) / sqrt((l+m)!(l-m)!)
    where s^2 = b_xi, t^2 = b_eta are the spinor components of the null vector b.
    """
    b = as_vec3(b)
    if not is_null(b):
        raise NotNullVectorError("generating expansion requires b.b = 0")
    s, t = _spinor_of_null(b)
    out = np.zeros(2 * l + 1, dtype=complex)
    pre = 2.0 ** (l / 2) * math.sqrt(4 * math.pi / (2 * l + 1))
    for m in range(-l, l + 1):
        mag = math.exp(log_factorial(l) - 0.5 * (log_factorial(l + m) + log_factorial(l - m)))
        out[m + l] = pre * mag * 1j ** ((l + m) % 4) * s ** (l - m) * t ** (l + m)
    return out
