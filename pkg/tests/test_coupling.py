import itertools
import math

import numpy as np
import pytest

from solidharmonics import coupling, harmonics
from solidharmonics.coupling import TripleIndex
from solidharmonics.quadrature import grid_for_degree


def random_null(rng):
    s, t = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    return np.array([(s * s + t * t) / math.sqrt(2), 1j * (s * s - t * t) / math.sqrt(2),
                     1j * math.sqrt(2) * s * t])


def triples(l_max):
    for lb, lc, ld in itertools.product(range(l_max + 1), repeat=3):
        for mb in range(-lb, lb + 1):
            for mc in range(-lc, lc + 1):
                md = -mb - mc
                if abs(md) <= ld:
                    yield TripleIndex(lb, mb, lc, mc, ld, md)


def test_triple_index():
    t = TripleIndex.coerce(((2, 1), (1, -1), (1, 0)))
    assert t == TripleIndex(2, 1, 1, -1, 1, 0)
    assert (t.L, t.M, t.lam_b, t.lam_c, t.lam_d) == (4, 0, 0, 2, 2)
    with pytest.raises(Exception):
        TripleIndex(1, 2, 0, 0, 0, 0)


def test_selection_examples():
    assert coupling.selection_ok(((0, 0), (0, 0), (0, 0)))
    assert not coupling.selection_ok(((1, 0), (1, 0), (1, 0)))
    assert coupling.selection_ok(((2, 1), (1, -1), (1, 0)))


def test_3j_examples():
    assert np.isclose(coupling.wigner_3j((0, 0, 0, 0, 0, 0)), 1.0)
    assert np.isclose(coupling.wigner_3j((1, 0, 1, 0, 0, 0)), -1 / math.sqrt(3))
    assert np.isclose(coupling.wigner_3j((2, 0, 2, 0, 2, 0)), -math.sqrt(2 / 35))
    assert np.isclose(coupling.wigner_3j_zero(0, 0, 0), 1)
    assert np.isclose(coupling.wigner_3j_zero(1, 1, 0), -1 / math.sqrt(3))
    assert coupling.wigner_3j_zero(1, 1, 1) == 0
    for lb, lc, ld in itertools.product(range(7), repeat=3):
        assert np.isclose(coupling.wigner_3j_zero(lb, lc, ld), coupling.wigner_3j((lb, 0, lc, 0, ld, 0)), atol=1e-14)


def test_3j_permutation_symmetry():
    for t in triples(4):
        cols = [(t.lb, t.mb), (t.lc, t.mc), (t.ld, t.md)]
        v = coupling.wigner_3j(t)
        for perm in itertools.permutations(range(3)):
            odd = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]) % 2
            p = TripleIndex.coerce([cols[k] for k in perm])
            sign = (-1) ** t.L if odd else 1
            assert abs(coupling.wigner_3j(p) - sign * v) < 1e-14
        # m -> -m gives (-1)^L
        flipped = TripleIndex(t.lb, -t.mb, t.lc, -t.mc, t.ld, -t.md)
        assert abs(coupling.wigner_3j(flipped) - (-1) ** t.L * v) < 1e-14


def test_3j_orthogonality():
    for lb, lc, ld in itertools.product(range(5), repeat=3):
        if not (abs(lb - lc) <= ld <= lb + lc):
            continue
        for md in range(-ld, ld + 1):
            s = sum(coupling.wigner_3j((lb, mb, lc, -mb - md, ld, md)) ** 2
                    for mb in range(-lb, lb + 1) if abs(mb + md) <= lc)
            assert np.isclose((2 * ld + 1) * s, 1.0, atol=1e-13)


def test_3j_large_l_finite():
    v = coupling.wigner_3j((40, 3, 35, -10, 20, 7))
    assert math.isfinite(v) and abs(v) < 1


def test_gaunt_examples():
    for l in range(5):
        for m in range(-l, l + 1):
            t = TripleIndex(0, 0, l, m, l, -m)
            assert np.isclose(coupling.gaunt(t), (-1) ** m / math.sqrt(4 * math.pi))
    assert coupling.gaunt(((1, 0), (1, 0), (1, 0))) == 0
    # hand integral: (3/4pi) sqrt(5/4pi) * 2pi * 4/15
    assert np.isclose(coupling.gaunt(((2, 0), (1, 0), (1, 0))), 0.2523132522, atol=1e-10)


def test_gaunt_against_quadrature():
    grid = grid_for_degree(18)
    th, ph, w = grid.flat()
    for t in triples(3):
        q = np.sum(w * harmonics.eval_Y((t.lb, t.mb), th, ph) * harmonics.eval_Y((t.lc, t.mc), th, ph)
                   * harmonics.eval_Y((t.ld, t.md), th, ph))
        assert abs(coupling.gaunt(t) - q) < 1e-12


def test_triple_product_examples():
    rng = np.random.default_rng(0)
    b, c, d = (random_null(rng) for _ in range(3))
    assert np.isclose(coupling.triple_product_simple(b, c, d, 1, 1, 0), 4 * math.pi / 3 * np.dot(b, c))
    assert coupling.triple_product_simple(b, c, d, 2, 1, 0) == 0


def test_triple_product_against_quadrature_and_symmetric():
    rng = np.random.default_rng(1)
    grid = grid_for_degree(9)
    e, w = grid.points(), grid.weights
    for lb, lc, ld in itertools.product(range(4), repeat=3):
        b, c, d = (random_null(rng) for _ in range(3))
        f = (e @ b) ** lb * (e @ c) ** lc * (e @ d) ** ld
        q = np.sum(w * f)
        v = coupling.triple_product_simple(b, c, d, lb, lc, ld)
        if v == 0:
            # selection rules: quadrature is rounding noise relative to the integrand size
            assert abs(q) < 1e-13 * np.sum(w * np.abs(f))
        else:
            assert abs(v - q) <= 1e-10 * abs(q)
        for perm in itertools.permutations(range(3)):
            vs, ls = [b, c, d], [lb, lc, ld]
            pv = coupling.triple_product_simple(*[vs[k] for k in perm], *[ls[k] for k in perm])
            assert abs(pv - v) <= 1e-13 * max(abs(v), 1e-300)
