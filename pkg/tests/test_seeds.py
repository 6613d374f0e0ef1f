import random

import pytest

from rootqca.errors import NotEllCompatible, NotSkewSymmetrizable
from rootqca.samples import FINITE_TYPES, finite_type_seed, non_coprime_seed, single_exchange_seed
from rootqca.seeds import (
    ExchangeMatrix,
    Seed,
    check_compatible,
    e_matrix,
    exchange_constant,
    f_matrix,
    is_coprime,
    mutate_matrix,
    mutate_matrix_classical,
    mutate_pair,
    seed_from_json,
    seed_to_json,
    skew_symmetrizer,
    validate_seed,
)
from rootqca.torus import SkewForm, TorusElement


def test_e_and_f_matrices():
    b = ExchangeMatrix.square([[0, 1], [-3, 0]])
    assert e_matrix(b, 0, 1) == [[-1, 0], [3, 1]]
    assert e_matrix(b, 0, -1) == [[-1, 0], [0, 1]]
    assert f_matrix(b, 0, 1) == [[-1, 1], [0, 1]]


def test_skew_symmetrizer():
    assert skew_symmetrizer(ExchangeMatrix.square([[0, 1], [-3, 0]])) == (3, 1)
    assert skew_symmetrizer(ExchangeMatrix.square([[0, 2], [-1, 0]])) == (1, 2)
    with pytest.raises(NotSkewSymmetrizable):
        skew_symmetrizer(ExchangeMatrix.square([[0, 1], [1, 0]]))


def test_compatibility_examples():
    form = SkewForm.from_integer(9, [[0, 1], [-1, 0]])
    assert check_compatible(form, ExchangeMatrix.square([[0, 1], [-3, 0]])) == (3, 1)
    with pytest.raises(NotEllCompatible) as info:
        check_compatible(SkewForm.from_integer(5, [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]),
                         ExchangeMatrix(3, (0,), [[0], [1], [1]]))
    assert info.value.j == 0
    with pytest.raises(NotSkewSymmetrizable):
        check_compatible(form, ExchangeMatrix.square([[0, 1], [-3, 0]]), d=(1, 1))
    with pytest.raises(NotEllCompatible):
        check_compatible(form, ExchangeMatrix.square([[0, 1], [-3, 0]]), d=(6, 2))


def test_coprime():
    assert is_coprime(5, (1, 2))
    assert not is_coprime(9, (3, 1))
    assert not is_coprime(4, (1, 1))


def test_single_mutation_value():
    s = single_exchange_seed(5)
    form = s.torus_form
    expected = TorusElement.monomial(form, (-1, 1)) + TorusElement.monomial(form, (-1, 0))
    assert s.mutate(0).frame[0] == expected


@pytest.mark.parametrize("name", FINITE_TYPES)
@pytest.mark.parametrize("ell", [3, 5, 7])
def test_mutation_is_an_involution(name, ell):
    s = finite_type_seed(name, ell)
    for k in s.ex:
        back = s.mutate(k).mutate(k)
        assert back.frame == s.frame
        assert back.bmat == s.bmat
        assert back.form == s.form


def test_matrix_rules_agree():
    rng = random.Random(3)
    for _ in range(100):
        n = 4
        p = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                p[i][j] = rng.randint(-2, 2)
                p[j][i] = -p[i][j]
        b = ExchangeMatrix.square(p)
        for k in range(n):
            assert mutate_matrix(b, k, 1) == mutate_matrix(b, k, -1) == mutate_matrix_classical(b, k)


def test_mutate_pair_keeps_compatibility():
    s = finite_type_seed("B2", 5)
    form, bmat = s.form, s.bmat
    for k in (0, 1, 0, 1, 0):
        form, bmat = mutate_pair(form, bmat, k)
        assert check_compatible(form, bmat) == s.d


def test_exchange_constant_is_d():
    s = finite_type_seed("G2", 5)
    for j in s.ex:
        assert exchange_constant(s, j) % 5 == s.d[s.bmat.col_index(j)] % 5


def test_validate_and_json_round_trip():
    s = non_coprime_seed(9).mutate_word((0, 1))
    assert validate_seed(s).ok
    again = seed_from_json(seed_to_json(s))
    assert again.frame == s.frame and again.bmat == s.bmat and again.d == s.d


def test_bad_exchange_matrix():
    with pytest.raises(ValueError):
        ExchangeMatrix(2, (0,), [[1], [0]])
    with pytest.raises(ValueError):
        ExchangeMatrix(2, (0,), [[0], [1]], inv=(0,))


def test_frozen_mutation_rejected():
    s = single_exchange_seed(5)
    with pytest.raises(ValueError):
        mutate_pair(s.form, s.bmat, 1)


def test_initial_frame_length_checked():
    form = SkewForm.from_integer(5, [[0, -1], [1, 0]])
    with pytest.raises(ValueError):
        Seed.initial(form, ExchangeMatrix(2, (0,), [[0], [1]]), frame=[TorusElement.generator(form, 0)])
