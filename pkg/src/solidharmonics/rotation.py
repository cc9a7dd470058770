r"""Rotation matrices for integer-degree harmonics from spinor parameters.

A rotation is described by the pair :math:`(c, d)` with
:math:`|c|^2 + |d|^2 = 1`. It can be read off two frames directly,

.. math::

    c^2 = \mathbf e'_\eta\cdot\mathbf e_\xi, \qquad
    d^2 = \mathbf e'_\xi\cdot\mathbf e_\xi, \qquad
    \mathbf e_\xi = (\mathbf e_x - i\mathbf e_y)/\sqrt2,\;
    \mathbf e_\eta = (\mathbf e_x + i\mathbf e_y)/\sqrt2,

or from Euler angles. The matrix :math:`D^l_{m'm}(c, d)` then satisfies
:math:`Y_{lm'}(\mathbf r') = \sum_m D^l_{m'm} Y_{lm}(\mathbf r)` where the
image :math:`\mathbf r'` has the same components in the primed frame as
:math:`\mathbf r` has in the unprimed one.

Bookkeeping::

    unprimed frame e_i  --R-->  primed frame e'_i = R e_i
    r = sum r_i e_i     --R-->  r' = sum r_i e'_i = R r        (active image)

Euler angles follow the z, x', z'' sequence, R = Rz(alpha) Rx(beta) Rz(gamma),
for which c = e^{-i(alpha+gamma)/2} cos(beta/2) and
d = e^{i(gamma-alpha)/2} sin(beta/2) hold exactly. The common z, y', z''
convention differs by alpha -> alpha - pi/2, gamma -> gamma + pi/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import FrameError, DomainError
from .harmonics import eval_Y_row
from .polynom import from_spherical_components, spherical_components
from .quadrature import SHCoefficients
from .specfun import log_factorial

__all__ = [
    "Frame",
    "EulerAngles",
    "SpinorParams",
    "spherical_components",
    "from_spherical_components",
    "null_from_spinor",
    "cd_from_euler",
    "frame_from_euler",
    "cd_from_frames",
    "canonical_sign",
    "wigner_D",
    "rotation_matrix",
    "image_of",
    "rotate_values_check",
    "rotate_coefficients",
    "compose",
    "inverse",
    "transform_spinor",
]

_FRAME_TOL = 1e-12
_CLAMP = 1e-14
_SQRT1_2 = math.sqrt(0.5)


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal triad (ex, ey, ez)."""

    ex: np.ndarray
    ey: np.ndarray
    ez: np.ndarray

    def __post_init__(self):
        vs = [np.asarray(v, dtype=float).reshape(3) for v in (self.ex, self.ey, self.ez)]
        object.__setattr__(self, "ex", vs[0])
        object.__setattr__(self, "ey", vs[1])
        object.__setattr__(self, "ez", vs[2])
        for v in vs:
            if abs(np.dot(v, v) - 1.0) > _FRAME_TOL:
                raise FrameError("frame vectors must be unit length")
        if max(abs(np.dot(vs[0], vs[1])), abs(np.dot(vs[0], vs[2])),
               abs(np.dot(vs[1], vs[2]))) > _FRAME_TOL:
            raise FrameError("frame vectors must be mutually orthogonal")
        if np.max(np.abs(np.cross(vs[0], vs[1]) - vs[2])) > _FRAME_TOL:
            raise FrameError("frame must be right-handed (ez = ex x ey)")

    @classmethod
    def standard(cls) -> "Frame":
        return cls(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))

    @classmethod
    def from_matrix(cls, R) -> "Frame":
        """Frame whose vectors are the columns of the rotation matrix R."""
        R = np.asarray(R, dtype=float)
        return cls(R[:, 0], R[:, 1], R[:, 2])

    def matrix(self) -> np.ndarray:
        return np.column_stack([self.ex, self.ey, self.ez])

    @property
    def e_xi(self) -> np.ndarray:
        return _SQRT1_2 * (self.ex - 1j * self.ey)

    @property
    def e_eta(self) -> np.ndarray:
        return _SQRT1_2 * (self.ex + 1j * self.ey)


@dataclass(frozen=True)
class EulerAngles:
    """Euler angles in radians (z, x', z'' sequence); beta in [0, pi]."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (-1e-15 <= self.beta <= math.pi + 1e-15):
            raise DomainError("beta must lie in [0, pi]")


@dataclass(frozen=True)
class SpinorParams:
    """Unit two-spinor (c, d) parametrising a rotation."""

    c: complex
    d: complex

    def __post_init__(self):
        c, d = complex(self.c), complex(self.d)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        if abs(abs(c) ** 2 + abs(d) ** 2 - 1.0) > 1e-12:
            raise DomainError("spinor parameters must satisfy |c|^2 + |d|^2 = 1")

    def __neg__(self):
        return SpinorParams(-self.c, -self.d)

    def su2(self) -> np.ndarray:
        """The SU(2) matrix [[c, -conj(d)], [d, conj(c)]]."""
        return np.array([[self.c, -self.d.conjugate()], [self.d, self.c.conjugate()]])

    @classmethod
    def from_su2(cls, U) -> "SpinorParams":
        return cls(U[0, 0], U[1, 0])

    def same_rotation(self, other: "SpinorParams", tol: float = 1e-12) -> bool:
        """Equal up to the unobservable global sign."""
        return (max(abs(self.c - other.c), abs(self.d - other.d)) <= tol
                or max(abs(self.c + other.c), abs(self.d + other.d)) <= tol)


def null_from_spinor(s: complex, t: complex) -> np.ndarray:
    """Null vector with b_xi = s^2, b_eta = t^2, b_z = i sqrt(2) s t."""
    return from_spherical_components(s * s, t * t, 1j * math.sqrt(2.0) * s * t)


def canonical_sign(c: complex, d: complex):
    """Fix the global sign: Re c >= 0, then Im c >= 0, then Re d >= 0."""
    tie = 1e-15
    if c.real < -tie:
        flip = True
    elif abs(c.real) <= tie:
        if c.imag < -tie:
            flip = True
        elif abs(c.imag) <= tie:
            flip = d.real < -tie or (abs(d.real) <= tie and d.imag < 0)
        else:
            flip = False
    else:
        flip = False
    return (-c, -d) if flip else (c, d)


def cd_from_euler(ang: EulerAngles) -> SpinorParams:
    a, b, g = ang.alpha, ang.beta, ang.gamma
    c = cmath.exp(-0.5j * (a + g)) * math.cos(b / 2)
    d = cmath.exp(0.5j * (g - a)) * math.sin(b / 2)
    return SpinorParams(c, d)


def _rz(a):
    ca, sa = math.cos(a), math.sin(a)
    return np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])


def _rx(b):
    cb, sb = math.cos(b), math.sin(b)
    return np.array([[1.0, 0.0, 0.0], [0.0, cb, -sb], [0.0, sb, cb]])


def euler_matrix(ang: EulerAngles) -> np.ndarray:
    """R = Rz(alpha) Rx(beta) Rz(gamma)."""
    return _rz(ang.alpha) @ _rx(ang.beta) @ _rz(ang.gamma)


def frame_from_euler(ang: EulerAngles, base: Frame | None = None) -> Frame:
    """Primed frame obtained by rotating ``base`` (default standard) by ``ang``."""
    base = base or Frame.standard()
    R = euler_matrix(ang)
    B = base.matrix()
    # rotate about the base frame's own axes
    return Frame.from_matrix(B @ R)


def _clamped(z: complex) -> complex:
    re = 0.0 if abs(z.real) < _CLAMP else z.real
    im = 0.0 if abs(z.imag) < _CLAMP else z.imag
    return complex(re, im)


def cd_from_frames(unprimed: Frame, primed: Frame) -> SpinorParams:
    """Spinor parameters of the rotation carrying ``unprimed`` onto ``primed``.

    The relative sign of c and d is fixed by i sqrt(2) c conj(d) = e'_eta . e_z,
    the global sign by :func:`canonical_sign`.
    """
    e_xi = unprimed.e_xi
    c2 = _clamped(complex(np.dot(primed.e_eta, e_xi)))
    d2 = _clamped(complex(np.dot(primed.e_xi, e_xi)))
    c = cmath.sqrt(c2)
    d = cmath.sqrt(d2)
    target = complex(np.dot(primed.e_eta, unprimed.ez))
    if abs(1j * math.sqrt(2.0) * c * d.conjugate() - target) > \
            abs(-1j * math.sqrt(2.0) * c * d.conjugate() - target):
        d = -d
    c, d = canonical_sign(c, d)
    # renormalise the last few ulps so the SpinorParams invariant is tight
    n = math.sqrt(abs(c) ** 2 + abs(d) ** 2)
    return SpinorParams(c / n, d / n)


def wigner_D(l: int, p: SpinorParams) -> np.ndarray:
    """(2l+1) x (2l+1) matrix D^l_{m'm}; row m' + l, column m + l.

    D_{m'm} = i^{m-m'} sqrt((l-m)!(l+m)!/((l-m')!(l+m')!))
              sum_k C(l-m', m-m'+k) C(l+m', k) (-1)^k
                    conj(d)^k conj(c)^{l+m'-k} c^{l-m-k} d^{m-m'+k}
    """
    if int(l) != l or l < 0:
        raise DomainError("rotation matrices are defined here for integer l >= 0 only")
    c, d = p.c, p.d
    cc, dc = c.conjugate(), d.conjugate()
    n = 2 * l + 1
    D = np.zeros((n, n), dtype=complex)
    for mp in range(-l, l + 1):
        for m in range(-l, l + 1):
            pre = math.exp(0.5 * (log_factorial(l - m) + log_factorial(l + m)
                                  - log_factorial(l - mp) - log_factorial(l + mp)))
            k_lo = max(0, mp - m)
            k_hi = min(l + mp, l - m)
            s = 0j
            for k in range(k_lo, k_hi + 1):
                binom = math.comb(l - mp, m - mp + k) * math.comb(l + mp, k)
                s += ((-1) ** k * binom * dc ** k * cc ** (l + mp - k)
                      * c ** (l - m - k) * d ** (m - mp + k))
            D[mp + l, m + l] = 1j ** ((m - mp) % 4) * pre * s
    return D


# spherical-component map u = T r with u_m = sqrt(4 pi/3) r Y_1m(r)
_T = np.array([[_SQRT1_2, -1j * _SQRT1_2, 0.0],
               [0.0, 0.0, 1.0],
               [-_SQRT1_2, -1j * _SQRT1_2, 0.0]])


def rotation_matrix(p: SpinorParams) -> np.ndarray:
    """Real 3x3 rotation R with Y_1m'(R r) = sum_m D^1_{m'm} Y_1m(r)."""
    R = np.linalg.solve(_T, wigner_D(1, p) @ _T)
    return R.real


def image_of(r, frames) -> np.ndarray:
    """Vector whose primed-frame components equal r's unprimed components."""
    unprimed, primed = frames
    r = np.asarray(r, dtype=float)
    comps = unprimed.matrix().T @ r
    return primed.matrix() @ comps


def rotate_values_check(l: int, p: SpinorParams, frames, r) -> float:
    """max_m' |Y_lm'(r') - sum_m D_m'm Y_lm(r)| with r' the image of r."""
    r = np.asarray(r, dtype=float)
    rp = image_of(r, frames)
    D = wigner_D(l, p)
    y = eval_Y_row(l, r)
    yp = eval_Y_row(l, rp)
    return float(np.max(np.abs(yp - D @ y)))


def rotate_coefficients(coeffs: SHCoefficients, p: SpinorParams,
                        l: int | None = None) -> SHCoefficients:
    """Coefficients of the rotated function g(r) = f(R^{-1} r).

    A'_{lm'} = sum_m conj(D^l_{m'm}) A_lm. When ``l`` is given only that
    degree is transformed and the others are copied.
    """
    out = SHCoefficients(coeffs.l_max, dict(coeffs.entries))
    degrees = range(coeffs.l_max + 1) if l is None else [l]
    for deg in degrees:
        a = np.array([coeffs[(deg, m)] for m in range(-deg, deg + 1)])
        if not np.any(a):
            continue
        b = np.conj(wigner_D(deg, p)) @ a
        for m in range(-deg, deg + 1):
            out[(deg, m)] = b[m + deg]
    return out


def compose(p2: SpinorParams, p1: SpinorParams) -> SpinorParams:
    """Spinor of the rotation p1 followed by p2: D(compose(p2, p1)) = D(p2) D(p1).

    In the [[c, -conj(d)], [d, conj(c)]] layout this is the product U1 U2
    (the matrix acts on the frame vectors rather than on coordinates).
    """
    U = p1.su2() @ p2.su2()
    c, d = canonical_sign(complex(U[0, 0]), complex(U[1, 0]))
    return SpinorParams(c, d)


def inverse(p: SpinorParams) -> SpinorParams:
    c, d = canonical_sign(p.c.conjugate(), -p.d)
    return SpinorParams(c, d)


def transform_spinor(p: SpinorParams, s: complex, t: complex):
    """Spinor (s', t') of the image R b of the null vector built from (s, t).

    Inverts s = c s' - conj(d) t', t = d s' + conj(c) t'.
    """
    sp, tp = p.su2().conj().T @ np.array([s, t], dtype=complex)
    return complex(sp), complex(tp)
