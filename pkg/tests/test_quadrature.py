import io
import math

import numpy as np
import pytest

from solidharmonics import harmonics, quadrature, specfun
from solidharmonics.errors import EvaluationError, HarmonicIndexError
from solidharmonics.quadrature import SHCoefficients


def test_gauss_legendre_matches_numpy():
    for n in (1, 2, 5, 16, 40):
        x, w = quadrature.gauss_legendre(n)
        xr, wr = np.polynomial.legendre.leggauss(n)
        assert np.allclose(x, xr, atol=1e-14)
        assert np.allclose(w, wr, atol=1e-14)


def test_build_grid_examples():
    g = quadrature.build_grid(0)
    assert (g.n_theta, g.n_phi) == (1, 2)
    assert np.isclose(np.sum(g.weights), 4 * math.pi)
    assert abs(quadrature.integrate(lambda t, p: 1.0, quadrature.build_grid(5)) - 4 * math.pi) < 1e-13
    norm = quadrature.integrate(lambda t, p: abs(harmonics.eval_Y((7, 7), t, p)) ** 2, quadrature.build_grid(10))
    assert abs(norm - 1) < 1e-12


def test_orthonormality_l_max_10():
    g = quadrature.build_grid(10)
    th, ph, w = g.flat()
    ys = np.array([harmonics.eval_Y((l, m), th, ph) for l in range(11) for m in range(-l, l + 1)])
    gram = (ys * w) @ ys.conj().T
    assert np.max(np.abs(gram - np.eye(len(ys)))) < 1e-12


def test_legendre_square_integral():
    g = quadrature.build_grid(10)
    for l in range(11):
        val = quadrature.integrate(lambda t, p: specfun.legendre_p(l, np.cos(t)) ** 2, g)
        assert abs(val - 4 * math.pi / (2 * l + 1)) < 1e-12


def test_integrate_scalar_callable_and_errors():
    g = quadrature.build_grid(3)
    assert np.isclose(quadrature.integrate(lambda t, p: math.cos(t) ** 2, g), 4 * math.pi / 3)
    with pytest.raises(EvaluationError):
        quadrature.integrate(lambda t, p: np.where(t > 1, np.inf, 1.0), g)


def test_grid_determinism():
    g = quadrature.build_grid(12)
    f = lambda t, p: np.exp(np.sin(t) * np.cos(3 * p))
    assert quadrature.integrate(f, g) == quadrature.integrate(f, quadrature.build_grid(12))


def test_project_examples():
    c = quadrature.project(lambda t, p: harmonics.eval_Y((3, 2), t, p), 5)
    for (l, m), v in c.items():
        assert abs(v - (1 if (l, m) == (3, 2) else 0)) < 1e-12
    c = quadrature.project(lambda t, p: np.cos(t), 4)
    assert np.isclose(c[(1, 0)], math.sqrt(4 * math.pi / 3))
    assert max(abs(v) for k, v in c.items() if k != (1, 0)) < 1e-13


def test_exp_cos_reconstruction():
    f = lambda t, p: np.exp(np.cos(t))
    c = quadrature.project(f, 20)
    rng = np.random.default_rng(0)
    th = np.arccos(rng.uniform(-1, 1, 100))
    ph = rng.uniform(0, 2 * math.pi, 100)
    assert np.max(np.abs(quadrature.reconstruct(c, th, ph) - f(th, ph))) < 1e-10


def test_completeness_monotone():
    f = lambda t, p: 1 / (1.3 - np.sin(t) * np.cos(p))
    rng = np.random.default_rng(1)
    th = np.arccos(rng.uniform(-1, 1, 200))
    ph = rng.uniform(0, 2 * math.pi, 200)
    errs = [np.max(np.abs(quadrature.reconstruct(quadrature.project(f, L), th, ph) - f(th, ph)))
            for L in (4, 8, 16, 24)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_band_limited_round_trip():
    f = lambda t, p: 3 * harmonics.eval_Y((2, 1), t, p) - 1j * harmonics.eval_Y((4, 3), t, p)
    c = quadrature.project(f, 6)
    th, ph = np.linspace(0, math.pi, 17), np.linspace(0, 6, 17)
    assert np.max(np.abs(quadrature.reconstruct(c, th, ph) - f(th, ph))) < 1e-12
    one = SHCoefficients(0, {(0, 0): math.sqrt(4 * math.pi)})
    assert np.allclose(quadrature.reconstruct(one, th, ph), 1)


def test_project_legendre_examples():
    b = quadrature.project_legendre(lambda t: np.ones_like(t), 5)
    assert np.isclose(b[0], 1) and np.max(np.abs(b[1:])) < 1e-13
    b = quadrature.project_legendre(np.cos, 5)
    assert np.allclose(b, [0, 1, 0, 0, 0, 0], atol=1e-13)
    b = quadrature.project_legendre(lambda t: np.cos(t) ** 2, 4)
    assert np.allclose(b, [1 / 3, 0, 2 / 3, 0, 0], atol=1e-13)


def test_coefficients_json_round_trip():
    c = SHCoefficients(3, {(0, 0): 0.1 + 0.2j, (3, -2): -1 / 3, (2, 1): 1e-300j})
    back = SHCoefficients.from_json(c.to_json())
    assert back.l_max == 3 and back.entries == c.entries
    with pytest.raises(HarmonicIndexError):
        c[(4, 0)] = 1.0
    with pytest.raises(HarmonicIndexError):
        SHCoefficients(1, {(1, 2): 1.0})


def test_write_grid_csv():
    buf = io.StringIO()
    quadrature.write_grid_csv(quadrature.build_grid(2), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "theta,phi,w"
    assert len(lines) == 1 + 3 * 6
    assert np.isclose(sum(float(l.split(",")[2]) for l in lines[1:]), 4 * math.pi)
