"""Interaction energy of two charge clouds from their multipole moments.

    python demos/multipole_energy.py
"""

import numpy as np

from solidharmonics import expansions
from solidharmonics.expansions import PointChargeSet

rng = np.random.default_rng(1)
s1 = PointChargeSet(rng.uniform(-0.3, 0.3, (4, 3)), [1.0, -0.5, 0.8, -1.2])
s2 = PointChargeSet(rng.uniform(-0.3, 0.3, (3, 3)), [0.7, 0.9, -0.4])
r = np.array([0.5, -1.0, 1.6])

exact = expansions.coulomb_energy(s1, s2, r)
print(f"direct Coulomb sum: {exact:.15f}")
for l_max in (2, 4, 8, 12, 16):
    m1 = expansions.multipole_moments(s1, l_max)
    m2 = expansions.multipole_moments(s2, l_max)
    total = expansions.interaction_energy(m1, m2, r, l_max)
    box = expansions.interaction_energy(m1, m2, r, l_max, truncation="box")
    print(f"l_max={l_max:2d}  l1+l2<=l_max err {abs(total - exact):.2e}   l1,l2<=l_max err {abs(box - exact):.2e}")

# Unconjugated moments do not reproduce the Coulomb sum.
m1 = expansions.multipole_moments(s1, 12, conjugate=False)
m2 = expansions.multipole_moments(s2, 12, conjugate=False)
e, _, imag = expansions.interaction_energy(m1, m2, r, 12, full=True, strict=False)
print(f"unconjugated: {e:.6f} (imaginary part {imag:.2e}) vs {exact:.6f}")

# Grounded sphere: the image charge cancels the potential on the surface.
q_img, pos = expansions.image_charge(1.0, [0, 0, 2.5], 1.0)
surface = rng.normal(size=(5, 3))
surface /= np.linalg.norm(surface, axis=1)[:, None]
print("image", q_img, pos, "surface potential", expansions.image_potential(1.0, [0, 0, 2.5], 1.0, surface))
