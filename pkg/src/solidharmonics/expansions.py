"""Series expansions and integral theorems built on the harmonic layer.

Every partial-sum routine accepts ``full=True`` to also return the
magnitude of the last shell it added, so callers can watch convergence.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (ConsistencyError, DomainError, NotHarmonicError,
                     SingularityError)
from .harmonics import C_lm, eval_Y_dir, eval_Y_row, maxwell_from_poles
from .polynom import HomogeneousPoly, apply_operator, as_vec3, evaluate
from .quadrature import SHCoefficients, build_grid, pairwise_sum
from .specfun import (legendre_p, log_factorial, s_kernel, sph_bessel_j,
                      sph_hankel1)

__all__ = [
    "PointChargeSet",
    "MultipoleMoments",
    "addition_theorem_check",
    "greens_partial_sum",
    "plane_wave_partial_sum",
    "exp_partial_sum",
    "spherical_wave_partial_sum",
    "image_charge",
    "image_potential",
    "coulomb_energy",
    "multipole_moments",
    "interaction_energy",
    "maxwell_theorem_eval",
    "hobson_rhs",
    "hobson_lhs",
]


def _unit(e, name="vector"):
    e = np.asarray(e, dtype=float)
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise DomainError(f"{name} must be a unit vector")
    return e


def _cos_between(a, b) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    return float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0))


# -- charge sets ------------------------------------------------------------------

@dataclass(frozen=True)
class PointChargeSet:
    """Point charges q_i at positions r_i (relative to the expansion centre)."""

    positions: np.ndarray
    charges: np.ndarray

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        q = np.atleast_1d(np.asarray(self.charges, dtype=float))
        if pos.shape[-1] != 3 or pos.shape[0] != q.shape[0]:
            raise ValueError("positions must be (N, 3) with N charges")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(q))):
            raise ValueError("charge set entries must be finite")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "charges", q)

    def __len__(self):
        return len(self.charges)

    @classmethod
    def from_csv(cls, source) -> "PointChargeSet":
        """Parse ``x,y,z,q`` records; ``#`` starts a comment.

        ``source`` is a path or an open text file.
        """
        if isinstance(source, (str, bytes)) and "\n" not in str(source):
            with open(source, newline="") as fh:
                return cls._parse(fh)
        if isinstance(source, str):
            return cls._parse(io.StringIO(source))
        return cls._parse(source)

    @classmethod
    def _parse(cls, fh) -> "PointChargeSet":
        rows = []
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = next(csv.reader([line]))
            if len(fields) != 4:
                raise ValueError(f"line {lineno}: expected x,y,z,q")
            try:
                rows.append([float(v) for v in fields])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        if not rows:
            raise ValueError("no charges found")
        a = np.array(rows)
        return cls(a[:, :3], a[:, 3])

    def translated(self, offset) -> "PointChargeSet":
        return PointChargeSet(self.positions + np.asarray(offset, float), self.charges)


class MultipoleMoments(SHCoefficients):
    """Moments rho_lm of a charge set; ``conjugated`` records the convention."""

    def __init__(self, l_max, entries=None, conjugated=True):
        super().__init__(l_max, entries or {})
        self.conjugated = conjugated


def multipole_moments(charges: PointChargeSet, l_max: int,
                      conjugate: bool = True) -> MultipoleMoments:
    """rho_lm = sum_i q_i |r_i|^l conj(Y_lm(e_i)).

    With ``conjugate=False`` the unconjugated sum q_i |r_i|^l Y_lm(e_i) is
    returned instead. Only the conjugated moments reproduce the Coulomb
    energy through :func:`interaction_energy` for general charge sets.
    """
    pos, q = charges.positions, charges.charges
    rr = np.linalg.norm(pos, axis=1)
    at_origin = rr == 0
    dirs = np.where(at_origin[:, None], np.array([0.0, 0.0, 1.0]), pos)
    out = MultipoleMoments(l_max, conjugated=conjugate)
    for l in range(l_max + 1):
        w = q * rr ** l if l else q.astype(float)
        y = eval_Y_row(l, dirs)
        if conjugate:
            y = np.conj(y)
        for m in range(-l, l + 1):
            out[(l, m)] = pairwise_sum(w * y[m + l])
    return out


_C_ROWS: dict = {}


def _log_abs_C_row(l):
    """log|C_lm| and sign(C_lm) for m = -l..l."""
    if l not in _C_ROWS:
        c = np.array([C_lm(l, m) for m in range(-l, l + 1)])
        _C_ROWS[l] = (np.log(np.abs(c)), np.sign(c))
    return _C_ROWS[l]


def interaction_energy(m1: MultipoleMoments, m2: MultipoleMoments, r, l_max: int | None = None,
                       full: bool = False, strict: bool = True, truncation: str = "total"):
    """Interaction energy of two charge sets from their multipole moments.

    E = sum_{l1 + l2 <= l_max} A_LM r^-(L+1) rho1_{l1 m1} Y_LM(e_r) rho2_{l2 m2},
    L = l1 + l2, M = m1 + m2, with
    A_LM = 16 pi^2 (-1)^l2 C_{l1 m1} C_{l2 m2} / ((2l1+1)(2l2+1) C_LM).

    Parameters
    ----------
    r : array_like
        Vector from the centre of set 1 to the centre of set 2.
    l_max : int, optional
        Truncation degree, default the smaller moment degree.
    truncation : {"total", "box"}
        ``"total"`` keeps l1 + l2 <= l_max (the order-l_max Taylor expansion
        in the charge offsets). ``"box"`` keeps every pair with l1, l2 <=
        l_max; the neglected tail is then O((a/(|r| - a))^(l_max+1)) for sets
        of radius a instead of O((2a/|r|)^(l_max+1)).
    strict : bool
        Raise :class:`ConsistencyError` if the imaginary residue exceeds
        1e-9 |E|.
    full : bool
        Also return the last shell magnitude and the imaginary residue.
    """
    r = np.asarray(r, dtype=float)
    R = float(np.linalg.norm(r))
    if R == 0:
        raise SingularityError("separation must be nonzero")
    if l_max is None:
        l_max = min(m1.l_max, m2.l_max)
    if truncation == "box":
        cap1, cap2 = min(l_max, m1.l_max), min(l_max, m2.l_max)
        l_max = cap1 + cap2
    elif truncation == "total":
        cap1, cap2 = m1.l_max, m2.l_max
        l_max = min(l_max, cap1 + cap2)
    else:
        raise ValueError(f"truncation must be 'total' or 'box', got {truncation!r}")
    log_16pi2 = math.log(16 * math.pi ** 2)
    log_r = math.log(R)
    shells = []
    total = 0j
    for L in range(l_max + 1):
        yL = eval_Y_row(L, r)
        logC_L, sgnC_L = _log_abs_C_row(L)
        shell = 0j
        for l1 in range(max(0, L - cap2), min(L, cap1) + 1):
            l2 = L - l1
            a = np.array([m1[(l1, k)] for k in range(-l1, l1 + 1)])
            b = np.array([m2[(l2, k)] for k in range(-l2, l2 + 1)])
            if not (np.any(a) and np.any(b)):
                continue
            log1, sgn1 = _log_abs_C_row(l1)
            log2, sgn2 = _log_abs_C_row(l2)
            # M + L index for every (m1, m2) pair
            mi = (np.arange(2 * l1 + 1)[:, None] - l1) + (np.arange(2 * l2 + 1)[None, :] - l2) + L
            logA = (log_16pi2 - math.log((2 * l1 + 1) * (2 * l2 + 1)) - (L + 1) * log_r
                    + log1[:, None] + log2[None, :] - logC_L[mi])
            sign = (-1) ** l2 * sgn1[:, None] * sgn2[None, :] * sgnC_L[mi]
            shell += np.sum(sign * np.exp(logA) * a[:, None] * b[None, :] * yL[mi])
        shells.append(abs(shell))
        total += shell
    if len(shells) >= 4 and all(shells[-k] > shells[-k - 1] > 0 for k in (1, 2, 3)):
        warnings.warn("multipole series shells grew for 3 consecutive orders; "
                      "the charge sets may overlap", RuntimeWarning, stacklevel=2)
    imag = abs(total.imag)
    if strict and imag > 1e-9 * max(abs(total), 1e-300):
        raise ConsistencyError(f"imaginary residue {imag:.3g} exceeds 1e-9 |E|")
    if full:
        return total.real, shells[-1], imag
    return total.real


def coulomb_energy(set1: PointChargeSet, set2: PointChargeSet, r) -> float:
    """Direct double sum q_i q_j / |r + r_j - r_i| (set 2 centred at r)."""
    d = (np.asarray(r, float) + set2.positions[None, :, :]) - set1.positions[:, None, :]
    dist = np.linalg.norm(d, axis=-1)
    return float(np.sum(set1.charges[:, None] * set2.charges[None, :] / dist))


# -- addition theorem and Green's function -----------------------------------------

def addition_theorem_check(l: int, e1, e2):
    """(P_l(e1.e2), 4 pi/(2l+1) sum_m conj(Y_lm(e1)) Y_lm(e2))."""
    e1 = _unit(e1, "e1")
    e2 = _unit(e2, "e2")
    lhs = legendre_p(l, float(np.clip(np.dot(e1, e2), -1.0, 1.0)))
    y = eval_Y_row(l, np.stack([e1, e2]))
    rhs = 4 * math.pi / (2 * l + 1) * math.fsum((np.conj(y[:, 0]) * y[:, 1]).real)
    return lhs, rhs


def _split_radii(r, rp):
    r = np.asarray(r, float)
    rp = np.asarray(rp, float)
    a, b = np.linalg.norm(r), np.linalg.norm(rp)
    if a == b:
        raise DomainError("the expansion needs |r| != |r'|")
    return (r, a, rp, b) if a < b else (rp, b, r, a)


def greens_partial_sum(r, rp, l_max: int, full: bool = False):
    """sum_{l <= l_max} r_<^l / r_>^(l+1) P_l(cos gamma), which tends to 1/|r - r'|."""
    small, rs, big, rb = _split_radii(r, rp)
    mu = _cos_between(small, big) if rs > 0 else 1.0
    total = 0.0
    last = 0.0
    ratio = rs / rb
    for l in range(l_max + 1):
        last = ratio ** l / rb * legendre_p(l, mu)
        total += last
    return (total, abs(last)) if full else total


def plane_wave_partial_sum(k, r, l_max: int, full: bool = False):
    """sum_{l <= l_max} (2l+1) i^l j_l(kr) P_l(e_k . e_r), which tends to exp(i k.r)."""
    k = np.asarray(k, float)
    r = np.asarray(r, float)
    kr = float(np.linalg.norm(k) * np.linalg.norm(r))
    if kr == 0:
        return (1.0 + 0j, 0.0) if full else 1.0 + 0j
    mu = _cos_between(k, r)
    total = 0j
    last = 0j
    for l in range(l_max + 1):
        last = (2 * l + 1) * 1j ** (l % 4) * sph_bessel_j(l, kr) * legendre_p(l, mu)
        total += last
    return (total, abs(last)) if full else total


def exp_partial_sum(q, r, l_max: int, full: bool = False):
    """sum (2l+1) (qr)^l s_l((qr)^2) P_l(e_q . e_r), which tends to exp(q.r)."""
    q = np.asarray(q, float)
    r = np.asarray(r, float)
    x = float(np.linalg.norm(q) * np.linalg.norm(r))
    if x == 0:
        return (1.0, 0.0) if full else 1.0
    mu = _cos_between(q, r)
    total = 0.0
    last = 0.0
    for l in range(l_max + 1):
        last = (2 * l + 1) * x ** l * s_kernel(l, x * x).real * legendre_p(l, mu)
        total += last
    return (total, abs(last)) if full else total


def spherical_wave_partial_sum(k: float, r, rp, l_max: int, full: bool = False):
    """4 pi i k sum j_l(k r_<) h_l(k r_>) sum_m conj(Y_lm(e_<)) Y_lm(e_>).

    Tends to exp(ik|r - r'|)/|r - r'|.
    """
    small, rs, big, rb = _split_radii(r, rp)
    if rs == 0:
        raise DomainError("both radii must be nonzero")
    total = 0j
    last = 0j
    for l in range(l_max + 1):
        y = eval_Y_row(l, np.stack([small, big]))
        ang = np.sum(np.conj(y[:, 0]) * y[:, 1])
        last = 4 * math.pi * 1j * k * sph_bessel_j(l, k * rs) * sph_hankel1(l, k * rb) * ang
        total += last
    return (complex(total), abs(last)) if full else complex(total)


# -- method of images ----------------------------------------------------------------

def image_charge(a: float, R, q: float):
    """Image of charge q at R outside a grounded sphere of radius a."""
    R = np.asarray(R, float)
    dist = float(np.linalg.norm(R))
    if a <= 0:
        raise DomainError("sphere radius must be positive")
    if dist <= a:
        raise DomainError("source charge must lie outside the sphere")
    return -(a / dist) * q, (a * a / dist ** 2) * R


def image_potential(a: float, R, q: float, s):
    """Potential of the source and its image at point(s) s."""
    q_img, pos = image_charge(a, R, q)
    s = np.asarray(s, float)
    R = np.asarray(R, float)
    return (q / np.linalg.norm(s - R, axis=-1) + q_img / np.linalg.norm(s - pos, axis=-1))


# -- integral theorems ---------------------------------------------------------------

def _check_harmonic(p: HomogeneousPoly, what: str):
    if not p.is_harmonic():
        raise NotHarmonicError(f"{what} must satisfy Laplace's equation")


def maxwell_theorem_eval(poles, phi: HomogeneousPoly, a: float):
    """Both sides of the sphere integral of Phi times the pole harmonic.

    lhs = surface integral over |r| = a of Phi(r) Y_l(r), where Y_l is
    r^(l+1) times the Maxwell harmonic of the poles (by quadrature);
    rhs = 4 pi (-1)^l a^(l+2)/(2l+1) times the l-fold directional
    derivative of Phi at the origin (exactly).
    """
    poles = [as_vec3(e) for e in poles]
    l = len(poles)
    if phi.degree != l and not phi.is_zero():
        raise ValueError("number of poles must equal the degree of phi")
    _check_harmonic(phi, "phi")
    v = maxwell_from_poles(poles)
    grid = build_grid(l + 1)
    pts = grid.points()
    vals = evaluate(v.numerator, pts) * evaluate(phi, a * pts)
    lhs = a * a * pairwise_sum(grid.weights * vals)
    d = phi
    for e in poles:
        d = d.dir_derivative(e)
    deriv = d.terms.get((0, 0, 0), 0j)
    rhs = 4 * math.pi * (-1) ** l * a ** (l + 2) / (2 * l + 1) * deriv
    return complex(lhs), complex(rhs)


def _as_pieces(f):
    if isinstance(f, HomogeneousPoly):
        return [f]
    return list(f)


def hobson_rhs(hk: HomogeneousPoly, f, R: float) -> complex:
    """4 pi R^(k+2) [s_k(R sqrt(lap)) H_k(grad) f] at the origin.

    ``f`` is a HomogeneousPoly or an iterable of them (a formal sum). The
    s_k series in the Laplacian terminates on polynomials: a piece of degree
    2n after H_k(grad) contributes 2^k (k+n)!/(n!(2k+2n+1)!) R^(2n) lap^n.
    """
    _check_harmonic(hk, "hk")
    k = hk.degree
    total = 0j
    for piece in _as_pieces(f):
        g = apply_operator(hk, piece)
        if g.is_zero() or g.degree % 2:
            continue
        n = g.degree // 2
        for _ in range(n):
            g = g.laplacian()
        val = g.terms.get((0, 0, 0), 0j)
        coef = math.exp(k * math.log(2.0) + log_factorial(k + n) - log_factorial(n)
                        - log_factorial(2 * k + 2 * n + 1))
        total += coef * R ** (2 * n) * val
    return complex(4 * math.pi * R ** (k + 2) * total)


def hobson_lhs(hk: HomogeneousPoly, f, R: float) -> complex:
    """Surface integral over |r| = R of (hk(r)/r^k) f(r) by quadrature."""
    pieces = _as_pieces(f)
    deg = hk.degree + max((p.degree for p in pieces), default=0)
    grid = build_grid(deg // 2 + 1)
    pts = grid.points()
    fv = sum(evaluate(p, R * pts) for p in pieces)
    return complex(R * R * pairwise_sum(grid.weights * evaluate(hk, pts) * fv))
