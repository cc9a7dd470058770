"""Product quadrature on the unit sphere and spherical-harmonic projection.

The grid is Gauss-Legendre in mu = cos(theta) times the trapezoid rule in
phi. With ``n_theta = L + 1`` and ``n_phi = 2L + 2`` it integrates every
spherical polynomial of total degree <= 2L + 1 exactly, so products
Y_lm conj(Y_l'm') with l, l' <= L are integrated to rounding error.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError, HarmonicIndexError
from .harmonics import eval_Y
from .specfun import legendre_p

__all__ = [
    "SphereGrid",
    "SHCoefficients",
    "gauss_legendre",
    "build_grid",
    "grid_for_degree",
    "pairwise_sum",
    "integrate",
    "project",
    "project_legendre",
    "reconstruct",
    "write_grid_csv",
]

_NEWTON_TOL = 1e-15


def gauss_legendre(n: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on P_n from the guesses cos(pi (i + 3/4)/(n + 1/2)).
    Nodes are returned in increasing order.
    """
    if n < 1:
        raise ValueError("need at least one node")
    i = np.arange(n)
    x = np.cos(np.pi * (i + 0.75) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(1, n):
            p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
        # p1 = P_n, p0 = P_{n-1}
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


@dataclass(frozen=True)
class SphereGrid:
    """Gauss-Legendre x uniform-azimuth grid.

    Attributes
    ----------
    n_theta, n_phi : int
        Node counts.
    mu, w_mu : ndarray
        Gauss-Legendre nodes in cos(theta) and their weights (sum 2).
    phi : ndarray
        Azimuth nodes 2 pi j / n_phi.
    exactness : int
        Highest total degree integrated exactly.
    """

    n_theta: int
    n_phi: int
    mu: np.ndarray = field(repr=False)
    w_mu: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    exactness: int

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.mu)

    def flat(self):
        """(theta, phi, weight) of every node as flat arrays."""
        th, ph = np.meshgrid(self.theta, self.phi, indexing="ij")
        w = np.outer(self.w_mu, np.full(self.n_phi, 2.0 * math.pi / self.n_phi))
        return th.ravel(), ph.ravel(), w.ravel()

    @property
    def nodes(self) -> list:
        th, ph, w = self.flat()
        return list(zip(th.tolist(), ph.tolist(), w.tolist()))

    def points(self) -> np.ndarray:
        """Unit vectors of the nodes, shape (n_theta * n_phi, 3)."""
        th, ph, _ = self.flat()
        s = np.sin(th)
        return np.stack([s * np.cos(ph), s * np.sin(ph), np.cos(th)], axis=-1)

    @property
    def weights(self) -> np.ndarray:
        return self.flat()[2]


def build_grid(l_max: int) -> SphereGrid:
    """Grid with l_max + 1 polar and 2 l_max + 2 azimuthal nodes."""
    if l_max < 0:
        raise ValueError("l_max must be nonnegative")
    mu, w = gauss_legendre(l_max + 1)
    n_phi = 2 * l_max + 2
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    return SphereGrid(l_max + 1, n_phi, mu, w, phi, 2 * l_max + 1)


def grid_for_degree(degree: int) -> SphereGrid:
    """Smallest grid exact for integrands of total degree ``degree``."""
    return build_grid(max(0, math.ceil((degree - 1) / 2)))


def pairwise_sum(a) -> complex:
    """Tree summation: repeatedly add adjacent pairs until one value is left."""
    a = np.asarray(a, dtype=complex).ravel()
    if a.size == 0:
        return 0j
    while a.size > 1:
        if a.size % 2:
            a = np.append(a, 0j)
        a = a[0::2] + a[1::2]
    return complex(a[0])


def _sample(f, th, ph) -> np.ndarray:
    try:
        vals = np.asarray(f(th, ph), dtype=complex)
        if vals.shape != th.shape:
            vals = np.broadcast_to(vals, th.shape)
    except (TypeError, ValueError):
        vals = np.array([f(t, p) for t, p in zip(th, ph)], dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("integrand is not finite on every grid node")
    return vals


def integrate(f, grid: SphereGrid) -> complex:
    """Sum of w_i f(theta_i, phi_i) over the grid (pairwise summation).

    ``f`` is called once with arrays of node angles; scalar-only callables
    are evaluated node by node instead.
    """
    th, ph, w = grid.flat()
    return pairwise_sum(w * _sample(f, th, ph))


# -- expansions ----------------------------------------------------------------------

@dataclass
class SHCoefficients:
    """Truncated expansion {(l, m): A_lm} for 0 <= l <= l_max, |m| <= l."""

    l_max: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (l, m) in self.entries:
            if l < 0 or l > self.l_max or abs(m) > l:
                raise HarmonicIndexError(f"entry ({l}, {m}) outside the index triangle")
        self.entries = {k: complex(v) for k, v in self.entries.items()}

    def __getitem__(self, key) -> complex:
        l, m = key
        if l < 0 or abs(m) > l:
            raise HarmonicIndexError(f"invalid harmonic index ({l}, {m})")
        return self.entries.get((l, m), 0j)

    def __setitem__(self, key, value):
        l, m = key
        if l < 0 or l > self.l_max or abs(m) > l:
            raise HarmonicIndexError(f"entry ({l}, {m}) outside the index triangle")
        self.entries[(l, m)] = complex(value)

    def items(self):
        return sorted(self.entries.items())

    def max_abs_diff(self, other: "SHCoefficients") -> float:
        keys = set(self.entries) | set(other.entries)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def to_json_dict(self) -> dict:
        return {f"{l},{m}": {"re": v.real, "im": v.imag} for (l, m), v in self.items()}

    def to_json(self) -> str:
        return json.dumps({"l_max": self.l_max, "coefficients": self.to_json_dict()})

    @classmethod
    def from_json(cls, text) -> "SHCoefficients":
        d = json.loads(text) if isinstance(text, str) else text
        coeffs = d.get("coefficients", d)
        entries = {}
        for key, v in coeffs.items():
            l, m = (int(s) for s in key.split(","))
            entries[(l, m)] = complex(v["re"], v["im"]) if isinstance(v, dict) else complex(v)
        l_max = d.get("l_max", max((l for l, _ in entries), default=0))
        return cls(int(l_max), entries)


def project(f, l_max: int, margin: int = 2, tol: float = 0.0) -> SHCoefficients:
    """A_lm = integral of f conj(Y_lm) for l <= l_max, on build_grid(l_max + margin).

    Coefficients with magnitude <= ``tol`` are omitted.
    """
    grid = build_grid(l_max + margin)
    th, ph, w = grid.flat()
    fw = w * _sample(f, th, ph)
    out = SHCoefficients(l_max)
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            a = pairwise_sum(fw * np.conj(eval_Y((l, m), th, ph)))
            if abs(a) > tol:
                out[(l, m)] = a
    return out


def project_legendre(f, l_max: int, margin: int = 2) -> np.ndarray:
    """B_l = (2l+1)/2 * integral_0^pi f(theta) P_l(cos theta) sin(theta) d theta."""
    mu, w = gauss_legendre(l_max + 1 + margin)
    th = np.arccos(mu)
    try:
        vals = np.asarray(f(th), dtype=complex)
        vals = np.broadcast_to(vals, th.shape)
    except (TypeError, ValueError):
        vals = np.array([f(t) for t in th], dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("integrand is not finite on every node")
    out = np.array([(2 * l + 1) / 2 * pairwise_sum(w * vals * legendre_p(l, mu))
                    for l in range(l_max + 1)])
    if np.all(out.imag == 0):
        return out.real
    return out


def reconstruct(coeffs: SHCoefficients, theta, phi):
    """Partial sum of A_lm Y_lm(theta, phi)."""
    scalar = np.ndim(theta) == 0 and np.ndim(phi) == 0
    th, ph = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    total = np.zeros(th.shape, dtype=complex)
    for (l, m), a in coeffs.items():
        total = total + a * eval_Y((l, m), th, ph)
    return complex(total) if scalar else total


def write_grid_csv(grid: SphereGrid, fh) -> None:
    """Write the nodes as ``theta,phi,w`` lines to an open text file."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["theta", "phi", "w"])
    for t, p, w in grid.nodes:
        writer.writerow([repr(t), repr(p), repr(w)])
