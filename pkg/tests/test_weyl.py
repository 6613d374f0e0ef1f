import itertools

import pytest

from rootqca.exchange_graph import explore
from rootqca.weyl import WeylAlgebra, predicted_weyl_exponent, weyl_discriminant, weyl_seed

Q2 = [[0, 1], [-1, 0]]


def generators(alg):
    return [alg.x(i) for i in range(alg.n)] + [alg.w(i) for i in range(alg.n)]


def test_single_pair_relation():
    alg = WeylAlgebra(1, 3)
    x, w, eps = alg.x(0), alg.w(0), alg.eps(1)
    assert x * w == alg.scalar(eps) - alg.one() + (w * x).scale(eps)
    assert alg.one() * x == x


@pytest.mark.parametrize("ell", [3, 5])
def test_straightening_with_lower_terms(ell):
    alg = WeylAlgebra(2, ell, Q2)
    eps = alg.eps(1)
    for j in range(2):
        lower = alg.one()
        for r in range(j):
            lower = lower + alg.w(r) * alg.x(r)
        assert alg.x(j) * alg.w(j) == lower.scale(eps) - lower + (alg.w(j) * alg.x(j)).scale(eps)


@pytest.mark.parametrize("q", [[[0, 0], [0, 0]], Q2, [[0, -2], [2, 0]]])
def test_x_pair_commutation(q):
    alg = WeylAlgebra(2, 5, q)
    assert alg.x(0) * alg.x(1) == (alg.x(1) * alg.x(0)).scale(alg.eps(1 + q[0][1]))


@pytest.mark.parametrize("ell", [3, 4])
def test_associativity_on_generator_words(ell):
    alg = WeylAlgebra(2, ell, Q2)
    gens = generators(alg)
    for a, b, c in itertools.product(gens, repeat=3):
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("ell", [3, 5])
def test_central_elements(ell):
    alg = WeylAlgebra(2, ell, Q2)
    gens = generators(alg)
    powers = [g ** ell for g in gens] + [alg.central_z(i) ** ell for i in range(2)]
    for p in powers:
        assert all(p * g == g * p for g in gens)


def test_z_commutation():
    alg = WeylAlgebra(2, 3, Q2)
    z0 = alg.central_z(0)
    assert alg.x(0) * z0 == (z0 * alg.x(0)).scale(alg.eps(1))
    assert z0 * alg.x(1) == alg.x(1) * z0
    assert z0 * alg.w(1) == alg.w(1) * z0
    with pytest.raises(ValueError):
        alg.central_z(2)


def test_z_forms_differ_by_a_unit():
    alg = WeylAlgebra(1, 5)
    assert alg.central_z_expanded(0) == alg.central_z(0).scale(alg.eps(1))


def test_seed_one_pair():
    report = weyl_seed(WeylAlgebra(1, 3))
    assert report.compatible and report.block_compatible
    assert report.lambda_observed == [[0, 1], [2, 0]]
    # the block formula has a zero where the relations give x z = eps z x
    assert report.lambda_block == [[0, 0], [0, 0]]
    assert report.delta == [(0, 1, 1, 0)]
    assert report.bmatrix == [[0], [1]]
    assert report.d == (2,)
    assert report.frozen_units == ((1, 1),)


def test_seed_two_pairs():
    report = weyl_seed(WeylAlgebra(2, 3))
    assert not report.block_compatible
    assert report.bmatrix == [[0, 0], [0, 0], [1, 1], [0, -1]]
    assert report.d == (2, 1)
    assert report.notes


@pytest.mark.parametrize("n", [1, 2])
def test_exchange_graph_has_two_to_the_n_seeds(n):
    assert len(explore(weyl_seed(WeylAlgebra(n, 3)).seed).nodes) == 2 ** n


def test_discriminant_one_pair():
    report = weyl_discriminant(WeylAlgebra(1, 3))
    # the factorisation into l^(2n l^(2n)) times a power of z^l is complete ...
    assert report.result.verdict
    assert report.observed_exponents == {"z1": 18}
    # ... but the power is z^18, not the closed form's z^6
    assert report.exponent == predicted_weyl_exponent(1, 3) == 6
    assert not report.verdict


def test_discriminant_needs_odd_order():
    with pytest.raises(ValueError):
        weyl_discriminant(WeylAlgebra(1, 4))


def test_bad_q():
    with pytest.raises(ValueError):
        WeylAlgebra(2, 3, [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        WeylAlgebra(1, 1)
