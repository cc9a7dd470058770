"""Rotate harmonics with spinor parameters read off two frames.

    python demos/rotations.py
"""

import math

import numpy as np

from solidharmonics import quadrature, rotation
from solidharmonics.rotation import EulerAngles, Frame

ang = EulerAngles(0.4, 1.1, -0.8)
base = Frame.standard()
primed = rotation.frame_from_euler(ang)

p_frames = rotation.cd_from_frames(base, primed)
p_euler = rotation.cd_from_euler(ang)
print("from frames:", p_frames)
print("from Euler: ", p_euler)
print("same rotation:", p_frames.same_rotation(p_euler, 1e-12))

# Y_lm at the image point is a D-weighted combination of Y_lm at the original.
r = np.array([0.2, 0.9, -0.4])
r /= np.linalg.norm(r)
for l in range(5):
    print(f"l={l}: residual {rotation.rotate_values_check(l, p_frames, (base, primed), r):.2e}")

# Rotating expansion coefficients and rotating back recovers them.
c = quadrature.project(lambda t, ph: np.exp(np.sin(t) * np.cos(ph)), 6)
back = rotation.rotate_coefficients(rotation.rotate_coefficients(c, p_euler), rotation.inverse(p_euler))
print("round trip error:", back.max_abs_diff(c))

# D^1 for a turn about x has D_00 = cos(beta).
D = rotation.wigner_D(1, rotation.cd_from_euler(EulerAngles(0, math.pi / 3, 0)))
print("D^1_00 =", D[1, 1].real, " cos(pi/3) =", math.cos(math.pi / 3))
