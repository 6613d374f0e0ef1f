import pytest

from rootqca.central import classical_embedding, ell_power, exchange_identity_check, frobenius_check, full_center_membership
from rootqca.errors import CoprimeViolated
from rootqca.exchange_graph import classical_seed
from rootqca.samples import FINITE_TYPES, finite_type_seed, non_coprime_seed
from rootqca.torus import TorusElement


@pytest.mark.parametrize("name", FINITE_TYPES)
def test_powers_are_central(name):
    seed = finite_type_seed(name, 5)
    for word in [(), (0,), (1, 0), (0, 1, 0)]:
        s = seed.mutate_word([k for k in word if k in seed.ex])
        for j in range(s.n):
            c = ell_power(s, j, word)
            assert c.certified
            assert full_center_membership(s, c.value)


def test_mutated_variable_is_not_central():
    s = finite_type_seed("A2", 5).mutate(0)
    assert not full_center_membership(s, s.frame[0])


@pytest.mark.parametrize("name", FINITE_TYPES)
def test_exchange_identity_coprime(name):
    seed = finite_type_seed(name, 7)
    for k in seed.ex:
        assert exchange_identity_check(seed, k).passed


@pytest.mark.parametrize("ell,residual", [
    (9, {(-9, 18): 3, (-9, 9): 3}),
    (4, {(-4, 6): 2}),
])
def test_exchange_identity_fails_off_hypothesis(ell, residual):
    seed = non_coprime_seed(ell)
    check = exchange_identity_check(seed, 0)
    assert not check.passed
    form = seed.torus_form
    expected = TorusElement.from_terms(form, ((e, form.ctx.from_int(c)) for e, c in residual.items()))
    assert check.residual == expected


def test_classical_embedding_scales_exponents():
    seed = finite_type_seed("A2", 5)
    shadow = classical_seed(seed).mutate(0).frame[0]
    image = classical_embedding(shadow, seed.torus_form)
    assert set(image.terms) == {(-5, 5), (-5, 0)}
    with pytest.raises(ValueError):
        classical_embedding(seed.frame[0], seed.torus_form)


@pytest.mark.parametrize("word", [(0,), (0, 1), (1, 0, 1), (0, 1, 0, 1)])
def test_frobenius_along_words(word):
    seed = finite_type_seed("B2", 5)
    assert frobenius_check(seed, word).passed


def test_frobenius_needs_coprime():
    with pytest.raises(CoprimeViolated):
        frobenius_check(non_coprime_seed(9), (0,))
