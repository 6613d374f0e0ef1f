import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from rootqca.cyclotomic import CyclotomicInteger, cyclotomic_polynomial, field_norm, is_unit, root_context, zeta_pow

T = sympy.Symbol("t")
ELLS = (1, 3, 4, 5, 7, 9)


def as_sympy(ell, coeffs):
    return sum(c * T ** k for k, c in enumerate(coeffs))


@pytest.mark.parametrize("ell", range(1, 31))
def test_polynomial_matches_sympy(ell):
    expected = sympy.Poly(sympy.cyclotomic_poly(ell, T), T).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(ell)) == expected


def test_polynomial_examples():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)


def test_zeta_examples():
    assert zeta_pow(9, 10) == zeta_pow(9, 1)
    assert zeta_pow(4, 2).coeffs == (-1, 0)
    assert zeta_pow(1, 7) == CyclotomicInteger(1, (1,))


def test_product_examples():
    one = CyclotomicInteger(3, (1,))
    z = zeta_pow(3, 1)
    assert (one + z) * (one + z * z) == one
    assert zeta_pow(4, 1) * zeta_pow(4, 1) == CyclotomicInteger(4, (-1, 0))


@pytest.mark.parametrize("ell", ELLS)
def test_order_of_zeta(ell):
    z = zeta_pow(ell, 1)
    one = CyclotomicInteger(ell, (1,))
    assert z ** ell == one
    assert all(z ** k != one for k in range(1, ell))
    if ell > 1:
        assert sum((z ** k for k in range(ell)), CyclotomicInteger(ell, (0,))).coeffs == root_context(ell).zero


def elements(ell, bound=5):
    deg = root_context(ell).degree
    return st.lists(st.integers(-bound, bound), min_size=deg, max_size=deg).map(lambda c: CyclotomicInteger(ell, c))


@pytest.mark.parametrize("ell", ELLS)
def test_ring_axioms_on_random_triples(ell):
    rng = random.Random(ell)
    deg = root_context(ell).degree
    for _ in range(200):
        a, b, c = (CyclotomicInteger(ell, [rng.randint(-9, 9) for _ in range(deg)]) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (b - a) == b
        assert a * CyclotomicInteger(ell, (1,)) == a


@pytest.mark.parametrize("ell", ELLS)
def test_norm_is_resultant(ell):
    rng = random.Random(100 + ell)
    phi = sympy.cyclotomic_poly(ell, T)
    deg = root_context(ell).degree
    for _ in range(20):
        coeffs = [rng.randint(-4, 4) for _ in range(deg)]
        a = CyclotomicInteger(ell, coeffs)
        assert field_norm(a) == sympy.resultant(phi, as_sympy(ell, coeffs), T)


@pytest.mark.parametrize("ell", (3, 5, 7, 9))
@given(data=st.data())
def test_norm_multiplicative(ell, data):
    a = data.draw(elements(ell))
    b = data.draw(elements(ell))
    assert field_norm(a * b) == field_norm(a) * field_norm(b)


def test_norm_examples():
    assert field_norm(CyclotomicInteger(9, (1,)) - zeta_pow(9, 1)) == 3
    assert field_norm(CyclotomicInteger(3, (2,))) == 4
    assert abs(field_norm(zeta_pow(7, 3))) == 1


def test_units():
    assert is_unit(zeta_pow(9, 5))
    assert not is_unit(CyclotomicInteger(5, (0,)))
    assert is_unit(CyclotomicInteger(5, (1,)) + zeta_pow(5, 1))
    assert not is_unit(CyclotomicInteger(3, (2,)))


@pytest.mark.parametrize("ell", (3, 5, 9))
@given(data=st.data())
def test_exact_division(ell, data):
    a = data.draw(elements(ell))
    b = data.draw(elements(ell).filter(lambda x: bool(x)))
    assert (a * b) / b == a


@pytest.mark.parametrize("text", ["1 - 2*z^3", "z", "-z^2 + 4", "0"])
def test_render_parse_round_trip(text):
    a = CyclotomicInteger.parse(text, 9)
    assert CyclotomicInteger.parse(str(a), 9) == a


def test_render_format():
    assert str(CyclotomicInteger(9, (1, 0, 0, -2, 0, 0))) == "1 - 2*z^3"
