r"""Recursion relations, derivative relations and ladder operators.

With :math:`\xi = x + iy`, :math:`\eta = x - iy` the six identities are

=========  ==========================================================================
ZV         :math:`2zV_{lm} = \xi V_{l,m-1} - 2(l-m)V_{l-1,m}`
ETA_V      :math:`2\eta V_{lm} = -zV_{l,m-1} - (l+m-1)V_{l-1,m-1}`
R2V        :math:`2r^2V_{lm} = -2(l-m)zV_{l-1,m} - (l+m-1)\xi V_{l-1,m-1}`
XI_STEP    :math:`(2l+1)\xi V_{lm} = -2r^2V_{l+1,m+1} + 2(l-m)(l-m-1)V_{l-1,m+1}`
ETA_STEP   :math:`2(2l+1)\eta V_{lm} = r^2V_{l+1,m-1} - (l+m)(l+m-1)V_{l-1,m-1}`
Z_STEP     :math:`(2l+1)zV_{lm} = -r^2V_{l+1,m} - (l-m)(l+m)V_{l-1,m}`
=========  ==========================================================================

V terms whose index falls outside :math:`|m| \le l` are taken as zero.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError, SingularityError
from .harmonics import HarmonicIndex, eval_V, eval_Y

__all__ = [
    "RecursionId",
    "identity_holds_for",
    "recursion_terms",
    "recursion_residual",
    "relative_residual",
    "ladder_coefficient",
    "ladder_apply_check",
    "radial_derivative_check",
    "derivative_analytic",
    "derivative_fd",
]


class RecursionId(enum.Enum):
    ZV = "zv"
    ETA_V = "eta_v"
    R2V = "r2v"
    XI_STEP = "xi_step"
    ETA_STEP = "eta_step"
    Z_STEP = "z_step"


# identities that lower m at fixed l reference V_{l,m-1}; at m = -l that term
# is not zero but undefined, and the identity fails under the zero rule
_LOWERS_M = {RecursionId.ZV, RecursionId.ETA_V, RecursionId.R2V}


def identity_holds_for(rid: RecursionId, idx) -> bool:
    """True if the identity is valid at this index (with out-of-range V = 0)."""
    l, m = HarmonicIndex.coerce(idx)
    return not (RecursionId(rid) in _LOWERS_M and m == -l)


def recursion_terms(rid: RecursionId, idx, r):
    """Left-hand side and the list of right-hand-side terms of one identity at r.

    Raises
    ------
    DomainError
        For ZV, ETA_V and R2V at m = -l, where the identity does not hold.
    """
    rid = RecursionId(rid)
    l, m = HarmonicIndex.coerce(idx)
    if not identity_holds_for(rid, (l, m)):
        raise DomainError(f"{rid.name} does not hold at m = -l (l={l})")
    r = np.asarray(r, dtype=float)
    x, y, z = r[..., 0], r[..., 1], r[..., 2]
    xi = x + 1j * y
    eta = x - 1j * y
    r2 = x * x + y * y + z * z

    def V(a, b):
        return eval_V(a, b, r)

    if rid is RecursionId.ZV:
        lhs = 2 * z * V(l, m)
        rhs = [xi * V(l, m - 1), -2 * (l - m) * V(l - 1, m)]
    elif rid is RecursionId.ETA_V:
        lhs = 2 * eta * V(l, m)
        rhs = [-z * V(l, m - 1), -(l + m - 1) * V(l - 1, m - 1)]
    elif rid is RecursionId.R2V:
        lhs = 2 * r2 * V(l, m)
        rhs = [-2 * (l - m) * z * V(l - 1, m), -(l + m - 1) * xi * V(l - 1, m - 1)]
    elif rid is RecursionId.XI_STEP:
        lhs = (2 * l + 1) * xi * V(l, m)
        rhs = [-2 * r2 * V(l + 1, m + 1), 2 * (l - m) * (l - m - 1) * V(l - 1, m + 1)]
    elif rid is RecursionId.ETA_STEP:
        lhs = 2 * (2 * l + 1) * eta * V(l, m)
        rhs = [r2 * V(l + 1, m - 1), -(l + m) * (l + m - 1) * V(l - 1, m - 1)]
    else:
        lhs = (2 * l + 1) * z * V(l, m)
        rhs = [-r2 * V(l + 1, m), -(l - m) * (l + m) * V(l - 1, m)]
    return lhs, rhs


def recursion_residual(rid: RecursionId, idx, r):
    """LHS - RHS of the identity ``rid`` at r (vectorised over leading axes)."""
    lhs, rhs = recursion_terms(rid, idx, r)
    return lhs - sum(rhs)


def relative_residual(rid: RecursionId, idx, r) -> float:
    """max |LHS - RHS| divided by the largest term magnitude."""
    lhs, rhs = recursion_terms(rid, idx, r)
    res = np.abs(lhs - sum(rhs))
    scale = np.maximum.reduce([np.abs(lhs)] + [np.abs(t) for t in rhs])
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(res / scale))


# -- ladder operators ---------------------------------------------------------------

def ladder_coefficient(direction: str, idx):
    """Coefficient and target index of the raising or lowering operator.

    Returns
    -------
    coeff : float
        sqrt((l-m)(l+m+1)) for ``"raise"``, sqrt((l+m)(l-m+1)) for ``"lower"``.
    target : tuple
        (l, m+1) or (l, m-1); the coefficient is 0 when it leaves the range.
    """
    l, m = HarmonicIndex.coerce(idx)
    if direction == "raise":
        return math.sqrt((l - m) * (l + m + 1)), (l, m + 1)
    if direction == "lower":
        return math.sqrt((l + m) * (l - m + 1)), (l, m - 1)
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


def _d1(f, x, h):
    # fourth-order central difference
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def ladder_apply_check(direction: str, idx, theta: float, phi: float,
                       fd_step: float = 1e-4) -> complex:
    """e^{+-i phi}(+-d_theta + i cot(theta) d_phi) Y_lm - coeff * Y_{l,m+-1}.

    Derivatives use a five-point central stencil, so the residual is
    O(fd_step^4) plus rounding of order eps / fd_step.
    """
    idx = HarmonicIndex.coerce(idx)
    if min(theta, math.pi - theta) < 10 * fd_step:
        raise DomainError("theta too close to a pole for the finite-difference stencil")
    sgn = 1 if direction == "raise" else -1
    coeff, (lt, mt) = ladder_coefficient(direction, idx)
    d_theta = _d1(lambda t: eval_Y(idx, t, phi), theta, fd_step)
    d_phi = _d1(lambda p: eval_Y(idx, theta, p), phi, fd_step)
    applied = np.exp(sgn * 1j * phi) * (sgn * d_theta + 1j / math.tan(theta) * d_phi)
    target = eval_Y((lt, mt), theta, phi) if abs(mt) <= lt else 0j
    return complex(applied - coeff * target)


# -- derivatives of B(r) V_lm ----------------------------------------------------------

_AXES = ("z", "eta", "xi")


def derivative_analytic(axis: str, p: int, idx, r) -> complex:
    """Derivative of r^p V_lm along z, eta or xi, reduced to pure V terms.

    d_eta = (d_x + i d_y)/2 and d_xi = (d_x - i d_y)/2.
    """
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {_AXES}")
    l, m = HarmonicIndex.coerce(idx)
    r = np.asarray(r, dtype=float)
    rr = float(np.linalg.norm(r))
    r2 = rr * rr
    b = rr ** p
    db_over_r = p * rr ** (p - 2)   # B'(r)/r
    k = 2 * l + 1

    def V(a, c):
        return eval_V(a, c, r)

    if axis == "z":
        zv = (-r2 * V(l + 1, m) - (l - m) * (l + m) * V(l - 1, m)) / k
        return complex(db_over_r * zv + b * V(l + 1, m))
    if axis == "eta":
        xiv = (-2 * r2 * V(l + 1, m + 1) + 2 * (l - m) * (l - m - 1) * V(l - 1, m + 1)) / k
        return complex(db_over_r * xiv / 2 + b * V(l + 1, m + 1))
    etav = (r2 * V(l + 1, m - 1) - (l + m) * (l + m - 1) * V(l - 1, m - 1)) / (2 * k)
    return complex(db_over_r * etav / 2 - b * V(l + 1, m - 1) / 4)


def derivative_fd(axis: str, p: int, idx, r, step: float = 1e-5) -> complex:
    """Same derivative by central finite differences in cartesian coordinates."""
    l, m = HarmonicIndex.coerce(idx)
    r = np.asarray(r, dtype=float)

    def f(pt):
        return np.linalg.norm(pt) ** p * eval_V(l, m, pt)

    grad = []
    for a in range(3):
        e = np.zeros(3)
        e[a] = step
        grad.append(_d1(lambda t: f(r + t * e / step), 0.0, step))
    gx, gy, gz = grad
    if axis == "z":
        return complex(gz)
    if axis == "eta":
        return complex((gx + 1j * gy) / 2)
    if axis == "xi":
        return complex((gx - 1j * gy) / 2)
    raise ValueError(f"axis must be one of {_AXES}")


def radial_derivative_check(axis: str, p: int, idx, r, step: float = 1e-5) -> complex:
    """Analytic minus finite-difference derivative of r^p V_lm."""
    if np.linalg.norm(r) == 0:
        raise SingularityError("derivative check is singular at the origin")
    HarmonicIndex.coerce(idx)
    return derivative_analytic(axis, p, idx, r) - derivative_fd(axis, p, idx, r, step)

