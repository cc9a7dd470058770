"""Solid and surface spherical harmonics built on null vectors and Maxwell poles.

Modules
-------
specfun      Legendre polynomials, the s_l kernel, spherical Bessel functions.
polynom      Exact homogeneous polynomials in (x, y, z).
harmonics    Y_lm, solid harmonics, Maxwell harmonics, generating expansions.
recursion    V_lm recursions, derivative relations, ladder operators.
quadrature   Sphere quadrature, projection and reconstruction.
expansions   Addition theorem, partial waves, images, multipoles, integral theorems.
rotation     Rotation matrices from spinor parameters.
coupling     Wigner 3j symbols and Gaunt integrals.
"""

from . import (coupling, errors, expansions, harmonics, polynom, quadrature,
               recursion, rotation, specfun)
from .coupling import TripleIndex, gaunt, wigner_3j
from .harmonics import HarmonicIndex, MaxwellHarmonic, eval_solid, eval_Y
from .polynom import HomogeneousPoly
from .quadrature import SHCoefficients, SphereGrid, build_grid
from .rotation import EulerAngles, Frame, SpinorParams, wigner_D

__version__ = "0.1.0"

__all__ = [
    "coupling", "errors", "expansions", "harmonics", "polynom", "quadrature",
    "recursion", "rotation", "specfun",
    "HarmonicIndex", "MaxwellHarmonic", "HomogeneousPoly", "SHCoefficients",
    "SphereGrid", "TripleIndex", "EulerAngles", "Frame", "SpinorParams",
    "eval_Y", "eval_solid", "build_grid", "gaunt", "wigner_3j", "wigner_D",
]
