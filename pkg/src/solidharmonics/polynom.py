r"""Exact sparse homogeneous polynomials in (x, y, z).

A :class:`HomogeneousPoly` stores the coefficients :math:`C_{\alpha\beta\gamma}`
of :math:`\sum C_{\alpha\beta\gamma} x^\alpha y^\beta z^\gamma` with
:math:`\alpha+\beta+\gamma` fixed. Differentiation, the Laplacian and products
are carried out on the exponent map, so identities such as
:math:`\nabla^2 (\mathbf b\cdot\mathbf r)^l = 0` for a null vector
:math:`\mathbf b` can be checked without any discretisation error beyond the
rounding of complex coefficients.

Complex 3-vectors are plain ``numpy`` arrays of shape ``(3,)``; ``cdot`` is the
unconjugated dot product under which a null vector satisfies ``cdot(b, b) == 0``.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple

import numpy as np

__all__ = [
    "HomogeneousPoly",
    "as_vec3",
    "cdot",
    "is_null",
    "monomials",
    "pow_linear_form",
    "laplacian",
    "dir_derivative",
    "evaluate",
    "apply_operator",
    "laplacian_matrix",
    "numerical_rank",
    "harmonic_dimension",
    "extract_trig_harmonics",
    "harmonic_basis",
    "spherical_components",
    "from_spherical_components",
]

Exps = Tuple[int, int, int]

PRUNE_REL = 1e-15


def as_vec3(v) -> np.ndarray:
    """Coerce to a complex array of shape (3,)."""
    a = np.asarray(v, dtype=complex)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    return a


def cdot(a, b) -> complex:
    """Unconjugated dot product a.b of two (complex) 3-vectors."""
    return complex(np.dot(as_vec3(a), as_vec3(b)))


def is_null(b, tol: float = 1e-12) -> bool:
    """True if |b.b| <= tol * |b|^2 (unconjugated square, hermitian norm)."""
    b = as_vec3(b)
    return abs(cdot(b, b)) <= tol * float(np.vdot(b, b).real)


def monomials(degree: int) -> list:
    """Exponent triples of total degree ``degree`` in a fixed order."""
    if degree < 0:
        return []
    return [(a, b, degree - a - b) for a in range(degree, -1, -1)
            for b in range(degree - a, -1, -1)]


class HomogeneousPoly:
    """Immutable homogeneous polynomial with complex coefficients.

    Parameters
    ----------
    degree : int
        Total degree shared by every monomial.
    terms : mapping
        ``{(alpha, beta, gamma): coefficient}``.
    ref : float, optional
        Reference magnitude for pruning. Coefficients smaller than
        ``1e-15 * max(ref, max|c|)`` are dropped, which removes the rounding
        debris left by cancelling arithmetic.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[Exps, complex] | None = None,
                 *, ref: float = 0.0):
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"exponent {e} incompatible with degree {degree}")
            c = complex(c)
            if c != 0:
                clean[e] = clean.get(e, 0j) + c
        big = max((abs(c) for c in clean.values()), default=0.0)
        thr = PRUNE_REL * max(ref, big)
        self.degree = degree
        kept = {}
        for e, c in clean.items():
            if abs(c) > thr:
                # drop a negligible real or imaginary part as well
                kept[e] = complex(c.real if abs(c.real) > thr else 0.0,
                                  c.imag if abs(c.imag) > thr else 0.0)
        self._terms = MappingProxyType(kept)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "HomogeneousPoly":
        return cls(degree, {})

    @classmethod
    def constant(cls, c: complex = 1.0) -> "HomogeneousPoly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, exps: Exps, c: complex = 1.0) -> "HomogeneousPoly":
        return cls(sum(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, b) -> "HomogeneousPoly":
        """The linear form b.r."""
        b = as_vec3(b)
        return cls(1, {(1, 0, 0): b[0], (0, 1, 0): b[1], (0, 0, 1): b[2]})

    @classmethod
    def r_squared(cls) -> "HomogeneousPoly":
        return cls(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})

    @classmethod
    def from_vector(cls, degree: int, vec) -> "HomogeneousPoly":
        return cls(degree, dict(zip(monomials(degree), vec)))

    # -- accessors ------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, complex]:
        return self._terms

    def max_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def to_vector(self) -> np.ndarray:
        return np.array([self._terms.get(e, 0j) for e in monomials(self.degree)])

    def __repr__(self):
        if not self._terms:
            return f"HomogeneousPoly({self.degree}, 0)"
        parts = [f"({c:.6g})*x^{a}y^{b}z^{g}" for (a, b, g), c in sorted(self._terms.items())]
        return f"HomogeneousPoly({self.degree}, " + " + ".join(parts) + ")"

    # -- arithmetic -----------------------------------------------------------

    def _same_degree(self, other):
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        self._same_degree(other)
        deg = self.degree if not self.is_zero() else other.degree
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0j) + c
        return HomogeneousPoly(deg, out, ref=max(self.max_coeff(), other.max_coeff()))

    def __neg__(self):
        return HomogeneousPoly(self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            out: dict = {}
            for (a1, b1, g1), c1 in self._terms.items():
                for (a2, b2, g2), c2 in other._terms.items():
                    e = (a1 + a2, b1 + b2, g1 + g2)
                    out[e] = out.get(e, 0j) + c1 * c2
            return HomogeneousPoly(self.degree + other.degree, out,
                                   ref=self.max_coeff() * other.max_coeff())
        if np.ndim(other) == 0:
            c = complex(other)
            return HomogeneousPoly(self.degree, {e: c * v for e, v in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.ndim(other) == 0:
            return self * (1.0 / complex(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = HomogeneousPoly.constant(1.0)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def conj(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.degree, {e: c.conjugate() for e, c in self._terms.items()})

    # -- calculus -------------------------------------------------------------

    def derivative(self, axis: int) -> "HomogeneousPoly":
        """Partial derivative along x (0), y (1) or z (2)."""
        if self.degree == 0:
            return HomogeneousPoly.zero(0)
        out = {}
        for e, c in self._terms.items():
            if e[axis]:
                f = list(e)
                f[axis] -= 1
                out[tuple(f)] = c * e[axis]
        return HomogeneousPoly(self.degree - 1, out)

    def dir_derivative(self, b) -> "HomogeneousPoly":
        """(b . grad) p."""
        b = as_vec3(b)
        if self.degree == 0:
            return HomogeneousPoly.zero(0)
        out: dict = {}
        for axis in range(3):
            if b[axis] == 0:
                continue
            for e, c in self.derivative(axis)._terms.items():
                out[e] = out.get(e, 0j) + b[axis] * c
        ref = self.max_coeff() * self.degree * float(np.max(np.abs(b)))
        return HomogeneousPoly(self.degree - 1, out, ref=ref)

    def laplacian(self) -> "HomogeneousPoly":
        if self.degree < 2:
            return HomogeneousPoly.zero(0)
        out: dict = {}
        for e, c in self._terms.items():
            for axis in range(3):
                k = e[axis]
                if k >= 2:
                    f = list(e)
                    f[axis] -= 2
                    f = tuple(f)
                    out[f] = out.get(f, 0j) + c * k * (k - 1)
        return HomogeneousPoly(self.degree - 2, out,
                               ref=self.max_coeff() * self.degree ** 2)

    def is_harmonic(self, tol: float = 1e-10) -> bool:
        """Laplacian vanishes relative to the coefficient scale."""
        lap = self.laplacian()
        scale = self.max_coeff() * max(self.degree, 1) ** 2
        return lap.max_coeff() <= tol * max(scale, 1e-300)

    def apply_as_operator(self, f: "HomogeneousPoly") -> "HomogeneousPoly":
        """H(grad) f: each monomial x^a y^b z^c becomes d^a_x d^b_y d^c_z."""
        return apply_operator(self, f)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, point):
        return evaluate(self, point)

    def allclose(self, other: "HomogeneousPoly", tol: float = 1e-12) -> bool:
        """Coefficientwise closeness relative to the larger coefficient scale."""
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            return False
        deg = other.degree if self.is_zero() else self.degree
        a = HomogeneousPoly(deg, self._terms).to_vector()
        b = HomogeneousPoly(deg, other._terms).to_vector()
        scale = max(self.max_coeff(), other.max_coeff())
        return float(np.max(np.abs(a - b))) <= tol * scale


# -- module-level operations ----------------------------------------------------

def pow_linear_form(b, l: int) -> HomogeneousPoly:
    """Multinomial expansion of (b.r)^l."""
    if l < 0:
        raise ValueError("negative degree")
    b = as_vec3(b)
    fl = math.factorial(l)
    out = {}
    for e in monomials(l):
        a, bb, g = e
        coef = fl // (math.factorial(a) * math.factorial(bb) * math.factorial(g))
        out[e] = coef * b[0] ** a * b[1] ** bb * b[2] ** g
    return HomogeneousPoly(l, out)


def laplacian(p: HomogeneousPoly) -> HomogeneousPoly:
    return p.laplacian()


def dir_derivative(b, p: HomogeneousPoly) -> HomogeneousPoly:
    return p.dir_derivative(b)


def evaluate(p: HomogeneousPoly, point):
    """Value of ``p`` at ``point`` (shape (3,) or (..., 3)); complex result."""
    pts = np.asarray(point, dtype=complex)
    if pts.shape[-1] != 3:
        raise ValueError("points must have a trailing axis of length 3")
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    n = p.degree
    px = [np.ones_like(x)]
    py = [np.ones_like(y)]
    pz = [np.ones_like(z)]
    for _ in range(n):
        px.append(px[-1] * x)
        py.append(py[-1] * y)
        pz.append(pz[-1] * z)
    out = np.zeros_like(x)
    for (a, b, g), c in p.terms.items():
        out = out + c * px[a] * py[b] * pz[g]
    return complex(out) if out.ndim == 0 else out


def apply_operator(h: HomogeneousPoly, f: HomogeneousPoly) -> HomogeneousPoly:
    """Apply H(grad) to f, where H's coefficients define the operator."""
    if h.degree > f.degree:
        return HomogeneousPoly.zero(0)
    out: dict = {}
    for (a, b, g), c in h.terms.items():
        for (fa, fb, fg), fc in f.terms.items():
            if fa < a or fb < b or fg < g:
                continue
            k = (math.perm(fa, a) * math.perm(fb, b) * math.perm(fg, g))
            e = (fa - a, fb - b, fg - g)
            out[e] = out.get(e, 0j) + c * fc * k
    ref = h.max_coeff() * f.max_coeff() * math.factorial(f.degree) / math.factorial(f.degree - h.degree)
    return HomogeneousPoly(f.degree - h.degree, out, ref=ref)


def laplacian_matrix(l: int) -> np.ndarray:
    """Matrix of the Laplacian from degree-l monomials to degree-(l-2) ones."""
    cols = monomials(l)
    rows = monomials(l - 2)
    index = {e: i for i, e in enumerate(rows)}
    a = np.zeros((len(rows), len(cols)))
    for j, e in enumerate(cols):
        for f, c in HomogeneousPoly.monomial(e).laplacian().terms.items():
            a[index[f], j] = c.real
    return a


def numerical_rank(a, tol: float = 1e-10) -> int:
    """Rank by Gaussian elimination with complete pivoting.

    Elimination stops once the largest remaining entry falls below
    ``tol`` times the first (largest) pivot.
    """
    a = np.array(a, dtype=complex)
    if a.size == 0:
        return 0
    nrow, ncol = a.shape
    first = None
    rank = 0
    for k in range(min(nrow, ncol)):
        sub = np.abs(a[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        piv = sub[i, j]
        if first is None:
            first = piv
        if piv == 0 or piv <= tol * first:
            break
        i += k
        j += k
        a[[k, i], :] = a[[i, k], :]
        a[:, [k, j]] = a[:, [j, k]]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
        rank += 1
    return rank


def harmonic_dimension(l: int) -> int:
    """Nullity of the Laplacian on degree-l homogeneous polynomials."""
    if l < 0:
        raise ValueError("negative degree")
    n = (l + 1) * (l + 2) // 2
    if l < 2:
        return n
    return n - numerical_rank(laplacian_matrix(l))


def extract_trig_harmonics(l: int, k: int) -> HomogeneousPoly:
    """The harmonic h_l^(k) multiplying e^{iku} in (i x cos u + i y sin u + z)^l.

    Recovered from 2l+1 equally spaced samples u_s = 2 pi s/(2l+1) by the
    discrete Fourier inversion h = (1/(2l+1)) sum_s e^{-iku_s} (b(u_s).r)^l.
    """
    if abs(k) > l:
        raise ValueError(f"|k| = {abs(k)} exceeds l = {l}")
    n = 2 * l + 1
    out: dict = {}
    ref = 0.0
    for s in range(n):
        u = 2.0 * math.pi * s / n
        term = pow_linear_form((1j * math.cos(u), 1j * math.sin(u), 1.0), l)
        ref = max(ref, term.max_coeff())
        w = complex(math.cos(k * u), -math.sin(k * u)) / n
        for e, c in term.terms.items():
            out[e] = out.get(e, 0j) + w * c
    return HomogeneousPoly(l, out, ref=ref)


def harmonic_basis(l: int) -> list:
    """2l+1 independent degree-l harmonic polynomials h_l^(k), k = -l..l."""
    return [extract_trig_harmonics(l, k) for k in range(-l, l + 1)]


def _as_poly_list(f) -> list:
    if isinstance(f, HomogeneousPoly):
        return [f]
    out = list(f)
    if not all(isinstance(p, HomogeneousPoly) for p in out):
        raise TypeError("expected HomogeneousPoly or an iterable of them")
    return out


def group_by_degree(f: Iterable[HomogeneousPoly] | HomogeneousPoly) -> dict:
    """Collect a formal sum of homogeneous pieces into {degree: poly}."""
    out: dict = {}
    for p in _as_poly_list(f):
        if p.is_zero():
            continue
        out[p.degree] = out[p.degree] + p if p.degree in out else p
    return out


def spherical_components(v):
    """(v_xi, v_eta, v_z) with v_xi = (v_x + i v_y)/sqrt(2), v_eta = (v_x - i v_y)/sqrt(2)."""
    v = as_vec3(v)
    s = math.sqrt(0.5)
    return complex(s * (v[0] + 1j * v[1])), complex(s * (v[0] - 1j * v[1])), complex(v[2])


def from_spherical_components(v_xi, v_eta, v_z) -> np.ndarray:
    """Inverse of :func:`spherical_components`."""
    s = math.sqrt(0.5)
    return np.array([s * (v_xi + v_eta), -1j * s * (v_xi - v_eta), v_z], dtype=complex)
