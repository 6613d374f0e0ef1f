import pytest

from rootqca.errors import NotInRootLattice, NotReduced
from rootqca.kacmoody import (
    CartanDatum,
    affine_a1,
    build_unipotent_seed_data,
    cartan_b2,
    degree_identity_check,
    reduced_word_data,
    reduced_words,
    sl,
    theorem_c_check,
)
from rootqca.seeds import validate_seed


def test_cartan_validation():
    with pytest.raises(ValueError):
        CartanDatum([[2, -1], [0, 2]], [1, 1])
    with pytest.raises(ValueError):
        CartanDatum([[2, -2], [-1, 2]], [1, 1])
    assert cartan_b2().d == (1, 2)


def test_pairings():
    a = sl(3)
    assert a.root_pair((1, 0), (0, 1)) == -1
    assert a.root_pair((1, 0), (1, 0)) == 2
    assert cartan_b2().root_pair((0, 1), (0, 1)) == 4
    assert a.pair((1, 0), (1, 0)) == 1


def test_weight_root_conversion():
    a = sl(3)
    assert a.root_to_weight((1, 0)) == a.simple_root(0) == (2, -1)
    assert a.weight_to_root((1, 1)) == (1, 1)
    with pytest.raises(NotInRootLattice):
        a.weight_to_root((1, 0))
    assert a.reflect_root(0, (0, 1)) == (1, 1)
    assert a.reflect_weight(0, (1, 0)) == (-1, 1)


def test_shift():
    a = sl(3)
    # s_1 varpi_1 - varpi_1 = -alpha_1 ; s_1 s_2 varpi_2 - varpi_2 = -alpha_1 - alpha_2
    assert a.shift([0], 0) == (-1, 0)
    assert a.shift([0, 1], 1) == (-1, -1)
    assert a.shift([0, 1], 0) == (-1, 0)


@pytest.mark.parametrize("datum,count", [(sl(2), 1), (sl(3), 6), (cartan_b2(), 8)])
def test_reduced_word_counts(datum, count):
    # non-empty reduced words: the longest elements have two each
    words = list(reduced_words(datum, 6))
    assert len(words) == count
    assert all(reduced_word_data(datum, w) for w in words)


def test_longest_word_roots():
    data = reduced_word_data(sl(3), (1, 2, 1))
    assert data.letters == (0, 1, 0)
    assert sorted(data.roots) == [(0, 1), (1, 0), (1, 1)]
    assert data.ex == (0,)
    with pytest.raises(NotReduced):
        reduced_word_data(sl(3), (1, 1))
    with pytest.raises(NotReduced):
        reduced_word_data(sl(3), (1, 2, 1, 2))


@pytest.mark.parametrize("datum,word", [
    (sl(3), (1, 2, 1)),
    (sl(3), (2, 1, 2)),
    (cartan_b2(), (1, 2, 1, 2)),
    (sl(4), (1, 2, 3, 1, 2, 1)),
    (affine_a1(), (1, 2, 1, 2)),
])
def test_degree_identity(datum, word):
    assert degree_identity_check(datum, word)


def test_distinct_letters_have_no_exchange():
    data = build_unipotent_seed_data(sl(3), (1, 2))
    assert data.ex == ()
    assert data.lam == [[0, 1], [-1, 0]]


@pytest.mark.parametrize("datum,word", [
    (sl(3), (1, 2, 1)),
    (cartan_b2(), (1, 2, 1, 2)),
    (sl(4), (1, 2, 3, 1, 2, 1)),
    (affine_a1(), (1, 2, 1, 2)),
])
def test_minor_form_is_compatible_up_to_minus_two(datum, word):
    data = build_unipotent_seed_data(datum, word)
    assert data.kappa == -2
    assert not data.strictly_compatible
    seed = data.seed(5)
    assert validate_seed(seed).ok


def test_closed_form_is_degenerate():
    data = build_unipotent_seed_data(sl(3), (1, 2, 1))
    assert data.lam_closed_form[0][1] == data.lam_closed_form[0][2]
    assert data.closed_form_kappa is None


def test_theorem_c_small_words():
    one = theorem_c_check(sl(2), (1,), 3)
    assert one.verdict and one.observed_exponents == {"x1": 6}
    two = theorem_c_check(sl(3), (1, 2), 3)
    assert two.verdict and set(two.observed_exponents.values()) == {18}
