import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solidharmonics import specfun
from solidharmonics.errors import DomainError


def rodrigues_coeffs(l):
    """Exact coefficients (ascending powers) of P_l from the Rodrigues formula."""
    # (mu^2 - 1)^l = sum_k C(l,k) (-1)^(l-k) mu^(2k)
    poly = {2 * k: Fraction(math.comb(l, k) * (-1) ** (l - k)) for k in range(l + 1)}
    for _ in range(l):
        poly = {p - 1: c * p for p, c in poly.items() if p > 0}
    norm = Fraction(1, 2 ** l * math.factorial(l))
    return {p: c * norm for p, c in poly.items()}


def test_factorials():
    assert specfun.factorial(0) == 1
    assert specfun.factorial(20) == 2432902008176640000
    assert specfun.double_factorial(-1) == 1
    assert specfun.double_factorial(7) == 105
    assert np.isclose(specfun.log_factorial(30), math.lgamma(31))
    assert np.isclose(specfun.factorial_ratio([40, 3], [38, 2]), 40 * 39 * 3)


def test_legendre_examples():
    assert specfun.legendre_p(0, 0.3) == 1.0
    assert np.isclose(specfun.legendre_p(2, 0.5), -0.125, atol=1e-15)
    assert np.isclose(specfun.legendre_p(7, 1.0), 1.0, atol=1e-15)
    assert np.isclose(specfun.legendre_dm(2, 2, 0.1), 3.0)
    assert np.isclose(specfun.legendre_dm(1, 1, -0.7), 1.0)
    for l in range(6):
        assert np.isclose(specfun.legendre_dm(l, 0, 0.37), specfun.legendre_p(l, 0.37))


def test_legendre_domain():
    with pytest.raises(DomainError):
        specfun.legendre_p(2, 1.5)


def test_three_term_recurrence():
    rng = np.random.default_rng(0)
    mus = np.concatenate([[-1, -0.5, 0, 0.5, 1], rng.uniform(-1, 1, 100)])
    for l in range(1, 30):
        res = ((l + 1) * specfun.legendre_p(l + 1, mus) - (2 * l + 1) * mus * specfun.legendre_p(l, mus)
               + l * specfun.legendre_p(l - 1, mus))
        assert np.max(np.abs(res)) < 1e-13


def test_rodrigues_oracle():
    mus = np.linspace(-1, 1, 41)
    for l in range(16):
        c = rodrigues_coeffs(l)
        exact = sum(float(v) * mus ** p for p, v in c.items())
        assert np.allclose(specfun.legendre_p(l, mus), exact, atol=1e-12)


def test_s_kernel_examples():
    assert np.isclose(specfun.s_kernel(0, 0), 1.0)
    for l in range(8):
        lead = 2 ** l * math.factorial(l) / math.factorial(2 * l + 1)
        assert np.isclose(specfun.s_kernel(l, 0), lead, rtol=1e-14)
    assert np.isclose(specfun.s_kernel(0, 1.0), math.sinh(1.0))


def test_bessel_examples():
    assert np.isclose(specfun.sph_bessel_j(0, 1.0), math.sin(1.0))
    assert specfun.sph_bessel_j(3, 0.0) == 0.0
    assert np.isclose(specfun.sph_bessel_j(1, 2.0), math.sin(2) / 4 - math.cos(2) / 2)
    assert np.isclose(specfun.sph_hankel1(0, 1.0), -1j * np.exp(1j))
    assert np.isclose(specfun.sph_hankel1(0, math.pi), 1j / math.pi)
    assert np.isclose(specfun.sph_hankel1(1, 1.0).real, 0.3011686789)


def test_bessel_against_scipy():
    special = pytest.importorskip("scipy.special")
    for l in range(0, 40, 3):
        for z in (0.1, 1.0, 5.0, 12.0, 30.0, 60.0):
            assert np.isclose(specfun.sph_bessel_j(l, z), special.spherical_jn(l, z), rtol=1e-12, atol=1e-300)


def test_j_identity_from_s_kernel():
    for l in range(13):
        for z in np.linspace(0.05, 20, 60):
            lhs = z ** l * specfun.s_kernel(l, -z * z)
            assert abs(lhs - specfun.sph_bessel_j(l, z)) < 1e-12


def d5(f, l, z, h=1e-5):
    return (8 * (f(l, z + h) - f(l, z - h)) - (f(l, z + 2 * h) - f(l, z - 2 * h))) / (12 * h)


def test_wronskian():
    j, y = specfun.sph_bessel_j, specfun.sph_bessel_y
    for l in range(8):
        for z in (0.7, 2.0, 5.5, 11.0, 19.0):
            w = j(l, z) * d5(y, l, z) - d5(j, l, z) * y(l, z)
            assert abs(w - 1 / z ** 2) < 1e-10


def test_hankel_decomposition():
    for l in range(10):
        for z in (0.5, 3.0, 17.0):
            h = specfun.sph_hankel1(l, z)
            assert h.real == specfun.sph_bessel_j(l, z)
            assert h.imag == specfun.sph_bessel_y(l, z)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 20), st.floats(-1, 1))
def test_legendre_bounded(l, mu):
    assert abs(specfun.legendre_p(l, mu)) <= 1 + 1e-12
