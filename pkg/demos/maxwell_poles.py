"""Build harmonics from poles, compare with Y_lm, and expand a null power.

    python demos/maxwell_poles.py
"""

import math

import numpy as np

from solidharmonics import harmonics, polynom

# Directional derivatives of 1/r along e_z give the zonal harmonics.
v = harmonics.maxwell_seed()
for l in range(1, 4):
    v = harmonics.apply_pole(v, [0, 0, 1])
    print(f"l={l}: numerator {v.numerator}")

# r^(l+1) V_lm times C_lm is the surface harmonic Y_lm.
r = np.array([0.3, -0.7, 0.5])
for l, m in [(2, 1), (3, -2), (5, 5)]:
    via_poles = harmonics.C_lm(l, m) * np.linalg.norm(r) ** (l + 1) * harmonics.eval_V(l, m, r)
    direct = harmonics.eval_Y_dir((l, m), r)
    print(f"Y_{l}{m:+d}: poles {via_poles:.12f}  direct {direct:.12f}")

# (b.r)^l is harmonic when b is null; its Y_lm coefficients come in closed form.
b = np.array([1.0, 2j, math.sqrt(3)])
l = 4
print("b.b =", np.dot(b, b), " laplacian zero:", polynom.pow_linear_form(b, l).laplacian().is_zero())
coeffs = harmonics.generating_coefficients(b, l)
e = r / np.linalg.norm(r)
print("(b.e)^4 =", np.dot(b, e) ** l, " sum a_m Y_4m(e) =", coeffs @ harmonics.eval_Y_row(l, e))
