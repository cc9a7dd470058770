import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solidharmonics import polynom, specfun
from solidharmonics.polynom import HomogeneousPoly
from solidharmonics.quadrature import grid_for_degree

NULL = np.array([1, 1j, 0])


def random_harmonic(rng, l):
    out = HomogeneousPoly.zero(l)
    for p in polynom.harmonic_basis(l):
        out = out + p * complex(*rng.normal(size=2))
    return out


def test_pow_linear_form_examples():
    assert polynom.pow_linear_form([0.3, 2, 1], 0).allclose(HomogeneousPoly.constant(1))
    expected = HomogeneousPoly(2, {(2, 0, 0): 1, (1, 1, 0): 2j, (0, 2, 0): -1})
    assert polynom.pow_linear_form(NULL, 2).allclose(expected)
    assert polynom.pow_linear_form([0, 0, 1], 3).allclose(HomogeneousPoly.monomial((0, 0, 3)))


def test_laplacian_examples():
    assert polynom.laplacian(HomogeneousPoly.r_squared()).allclose(HomogeneousPoly.constant(6))
    assert polynom.laplacian(HomogeneousPoly.monomial((2, 0, 1))).allclose(HomogeneousPoly.monomial((0, 0, 1), 2))
    for l in range(13):
        assert polynom.laplacian(polynom.pow_linear_form(NULL, l)).is_zero()


def test_dir_derivative_examples():
    for l in range(1, 6):
        d = polynom.dir_derivative([0, 0, 1], HomogeneousPoly.monomial((0, 0, l)))
        assert d.allclose(HomogeneousPoly.monomial((0, 0, l - 1), l))
    b = np.array([1, 2j, math.sqrt(3)])
    assert abs(polynom.cdot(b, b)) < 1e-12
    assert polynom.dir_derivative(b, polynom.pow_linear_form(b, 4)).is_zero()
    xy = HomogeneousPoly.monomial((1, 1, 0))
    assert polynom.dir_derivative([1, 0, 0], xy).allclose(HomogeneousPoly.monomial((0, 1, 0)))


def test_evaluate_examples():
    one = HomogeneousPoly.constant(1)
    assert polynom.evaluate(one, [3, -1, 2]) == 1
    b = np.array([0.3 + 1j, -2, 0.5j])
    r = np.array([0.2, -1.1, 0.7])
    assert np.isclose(polynom.evaluate(polynom.pow_linear_form(b, 5), r), np.dot(b, r) ** 5)
    assert polynom.evaluate(polynom.pow_linear_form(b, 3), [0, 0, 0]) == 0
    pts = np.random.default_rng(0).normal(size=(7, 3))
    vec = polynom.evaluate(polynom.pow_linear_form(b, 3), pts)
    assert np.allclose(vec, (pts @ b) ** 3)


def test_pruning_invariant():
    p = HomogeneousPoly(2, {(2, 0, 0): 1.0, (0, 2, 0): 1e-17, (1, 1, 0): 1 + 1e-18j})
    assert (0, 2, 0) not in p.terms
    assert p.terms[(1, 1, 0)].imag == 0
    for e in p.terms:
        assert sum(e) == 2
    with pytest.raises(ValueError):
        HomogeneousPoly(2, {(1, 0, 0): 1.0})


def test_harmonic_dimension():
    assert polynom.harmonic_dimension(0) == 1
    assert polynom.harmonic_dimension(2) == 5
    assert polynom.harmonic_dimension(6) == 13


def test_extract_trig_harmonics():
    assert polynom.extract_trig_harmonics(0, 0).allclose(HomogeneousPoly.constant(1))
    z = polynom.extract_trig_harmonics(1, 0)
    assert z.allclose(HomogeneousPoly.monomial((0, 0, 1)) * (z.terms[(0, 0, 1)]))
    assert set(z.terms) == {(0, 0, 1)}
    for l in range(9):
        basis = [polynom.extract_trig_harmonics(l, k) for k in range(-l, l + 1)]
        for p in basis:
            assert p.is_harmonic()
        mat = np.array([p.to_vector() for p in basis])
        assert polynom.numerical_rank(mat) == 2 * l + 1


def test_homogeneity():
    rng = np.random.default_rng(1)
    for l in range(7):
        p = HomogeneousPoly(l, {e: complex(*rng.normal(size=2)) for e in polynom.monomials(l)})
        r = rng.normal(size=3)
        t = rng.uniform(-3, 3)
        assert np.isclose(p(t * r), t ** l * p(r), rtol=1e-12, atol=0)


def test_radial_operator_identity():
    rng = np.random.default_rng(2)
    r2 = HomogeneousPoly.r_squared()
    for l in range(7):
        p = random_harmonic(rng, l)
        for n in range(5):
            F = r2 ** n
            lhs = p.apply_as_operator(F)
            pts = rng.normal(size=(10, 3))
            rr = np.linalg.norm(pts, axis=1)
            # [(1/r) d/dr]^l r^(2n) = 2^l n!/(n-l)! r^(2n-2l)
            radial = 2 ** l * math.factorial(n) / math.factorial(n - l) * rr ** (2 * n - 2 * l) if l <= n else 0 * rr
            got = polynom.evaluate(lhs, pts)
            want = polynom.evaluate(p, pts) * radial
            if l > n:
                assert lhs.is_zero()
            else:
                assert np.max(np.abs(got - want)) <= 1e-10 * np.max(np.abs(want))


def test_angular_identity():
    rng = np.random.default_rng(3)
    grid = grid_for_degree(60)
    e = grid.points()
    w = grid.weights
    for l in range(5):
        p = random_harmonic(rng, l)
        for q in (0.5, 1.3):
            r = rng.normal(size=3)
            lhs = np.sum(w * polynom.evaluate(p, q * e) * np.exp(q * (e @ r)))
            rn2 = float(r @ r)
            rhs = 4 * np.pi * p(r) * q ** (2 * l) * specfun.s_kernel(l, q * q * rn2)
            assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_laplacian_matrix_nullity():
    for l in range(9):
        a = polynom.laplacian_matrix(l)
        assert a.shape[1] - polynom.numerical_rank(a) == 2 * l + 1


def test_spherical_components_roundtrip():
    v = np.array([0.3 - 1j, 2.0, -0.4j])
    assert np.allclose(polynom.from_spherical_components(*polynom.spherical_components(v)), v)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=2, max_size=2), st.integers(0, 10))
def test_null_power_is_harmonic(ab, l):
    a, b = ab
    # (a, b) parametrise a null vector (1 - s^2, i(1 + s^2), 2s)-style with complex s
    s = complex(a, b)
    vec = np.array([1 - s * s, 1j * (1 + s * s), 2 * s])
    assert polynom.pow_linear_form(vec, l).laplacian().max_coeff() <= 1e-9 * max(1.0, polynom.pow_linear_form(vec, l).max_coeff())
