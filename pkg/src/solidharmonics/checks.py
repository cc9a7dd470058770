"""Seeded identity suites used by the ``check`` command and the tests.

Random inputs come from a 64-bit linear congruential generator
(state = 6364136223846793005 * state + 1442695040888963407 mod 2^64; a
uniform double is the top 53 bits times 2^-53), so a suite run with a given
seed reproduces in any implementation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import coupling, expansions, harmonics, recursion, rotation
from .polynom import HomogeneousPoly, monomials
from .quadrature import grid_for_degree

__all__ = ["Lcg64", "SuiteResult", "SUITES", "run_suite"]

_MASK = (1 << 64) - 1
_MUL = 6364136223846793005
_INC = 1442695040888963407


class Lcg64:
    """Reproducible 64-bit linear congruential generator."""

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (_MUL * self.state + _INC) & _MASK
        return self.state

    def uniform(self, a: float = 0.0, b: float = 1.0) -> float:
        return a + (b - a) * ((self.next_u64() >> 11) * 2.0 ** -53)

    def normal(self) -> float:
        # Box-Muller; 1 - u keeps the logarithm finite
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def unit_vector(self) -> np.ndarray:
        while True:
            v = np.array([self.normal(), self.normal(), self.normal()])
            n = np.linalg.norm(v)
            if n > 1e-8:
                return v / n

    def complex_vector(self) -> np.ndarray:
        return np.array([complex(self.normal(), self.normal()) for _ in range(3)])

    def spinor(self) -> rotation.SpinorParams:
        v = np.array([self.normal() for _ in range(4)])
        v /= np.linalg.norm(v)
        return rotation.SpinorParams(complex(v[0], v[1]), complex(v[2], v[3]))

    def euler(self) -> rotation.EulerAngles:
        return rotation.EulerAngles(self.uniform(0, 2 * math.pi), self.uniform(0, math.pi),
                                    self.uniform(0, 2 * math.pi))


@dataclass
class SuiteResult:
    suite: str
    max_residual: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance


def random_harmonic(rng: Lcg64, l: int) -> HomogeneousPoly:
    """Random complex combination of the 2l+1 solid harmonics of degree l."""
    out = HomogeneousPoly.zero(l)
    for m in range(-l, l + 1):
        out = out + harmonics.solid_poly(l, m) * complex(rng.normal(), rng.normal())
    return out


def suite_recursions(l_max: int, rng: Lcg64, points: int = 25) -> SuiteResult:
    pts = []
    for _ in range(points):
        pts.append(rng.unit_vector() * rng.uniform(0.5, 2.0))
    pts = np.array(pts)
    worst = 0.0
    n = 0
    for rid in recursion.RecursionId:
        for l in range(l_max + 1):
            for m in range(-l, l + 1):
                if not recursion.identity_holds_for(rid, (l, m)):
                    continue
                worst = max(worst, recursion.relative_residual(rid, (l, m), pts))
                n += 1
    return SuiteResult("recursions", worst, 1e-10, n)


def suite_addition(l_max: int, rng: Lcg64, pairs: int = 100) -> SuiteResult:
    worst = 0.0
    for _ in range(pairs):
        e1, e2 = rng.unit_vector(), rng.unit_vector()
        for l in range(l_max + 1):
            lhs, rhs = expansions.addition_theorem_check(l, e1, e2)
            worst = max(worst, abs(lhs - rhs))
    return SuiteResult("addition", worst, 1e-12, pairs * (l_max + 1))


def suite_rotation(l_max: int, rng: Lcg64, rotations: int = 50) -> SuiteResult:
    worst = 0.0
    base = rotation.Frame.standard()
    for _ in range(rotations):
        ang = rng.euler()
        primed = rotation.frame_from_euler(ang)
        p = rotation.cd_from_frames(base, primed)
        q = rotation.cd_from_euler(ang)
        worst = max(worst, 0.0 if p.same_rotation(q, 1e-11) else 1.0)
        r = rng.unit_vector()
        for l in range(l_max + 1):
            D = rotation.wigner_D(l, p)
            worst = max(worst, float(np.max(np.abs(D @ D.conj().T - np.eye(2 * l + 1)))))
            worst = max(worst, rotation.rotate_values_check(l, p, (base, primed), r))
    return SuiteResult("rotation", worst, 1e-11, rotations * (l_max + 1))


def suite_gaunt(l_max: int, rng: Lcg64) -> SuiteResult:
    grid = grid_for_degree(3 * l_max)
    th, ph, w = grid.flat()
    ys = {(l, m): harmonics.eval_Y((l, m), th, ph)
          for l in range(l_max + 1) for m in range(-l, l + 1)}
    worst = 0.0
    n = 0
    for lb, lc, ld in itertools.product(range(l_max + 1), repeat=3):
        for mb in range(-lb, lb + 1):
            for mc in range(-lc, lc + 1):
                md = -mb - mc
                if abs(md) > ld:
                    continue
                t = coupling.TripleIndex(lb, mb, lc, mc, ld, md)
                if not coupling.selection_ok(t):
                    continue
                q = np.sum(w * ys[(lb, mb)] * ys[(lc, mc)] * ys[(ld, md)])
                worst = max(worst, float(abs(coupling.gaunt(t) - q)))
                n += 1
    return SuiteResult("gaunt", worst, 1e-10, n)


def suite_maxwell(l_max: int, rng: Lcg64, trials: int = 3) -> SuiteResult:
    worst = 0.0
    n = 0
    for l in range(l_max + 1):
        for _ in range(trials):
            poles = [rng.complex_vector() for _ in range(l)]
            phi = random_harmonic(rng, l)
            a = rng.uniform(0.5, 2.0)
            lhs, rhs = expansions.maxwell_theorem_eval(poles, phi, a)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
            n += 1
    return SuiteResult("maxwell", worst, 1e-10, n)


def suite_hobson(l_max: int, rng: Lcg64, max_deg_f: int = 6) -> SuiteResult:
    worst = 0.0
    n = 0
    for k in range(l_max + 1):
        for deg in range(k, max_deg_f + 1):
            for R in (0.5, 1.0, 2.0):
                hk = random_harmonic(rng, k)
                f = [HomogeneousPoly(d, {e: complex(rng.normal(), rng.normal())
                                         for e in monomials(d)}) for d in range(deg + 1)]
                rhs = expansions.hobson_rhs(hk, f, R)
                lhs = expansions.hobson_lhs(hk, f, R)
                scale = max(abs(lhs), abs(rhs))
                worst = max(worst, abs(lhs - rhs) / scale if scale else 0.0)
                n += 1
    return SuiteResult("hobson", worst, 1e-10, n)


SUITES = {
    "recursions": suite_recursions,
    "addition": suite_addition,
    "rotation": suite_rotation,
    "gaunt": suite_gaunt,
    "maxwell": suite_maxwell,
    "hobson": suite_hobson,
}


def run_suite(name: str, l_max: int, seed: int = 0) -> SuiteResult:
    """Run one named suite with a seeded generator."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if l_max < 0:
        raise ValueError("l_max must be nonnegative")
    return SUITES[name](l_max, Lcg64(seed))
