import random

import pytest
import sympy

from rootqca.discriminant import (
    cluster_discriminant,
    compare_up_to_unit,
    determinant,
    determinant_cofactor,
    pbw_presentation,
    regular_trace,
    scalar_power,
    torus_presentation,
    trace_matrix,
    verify_nerve,
)
from rootqca.errors import NerveInvalid
from rootqca.samples import finite_type_seed
from rootqca.torus import SkewForm, TorusElement


def test_trace_matrix_one_variable():
    form = SkewForm.from_integer(3, [[0]])
    pres = torus_presentation(form)
    x3 = TorusElement.monomial(form, (3,), 3)
    zero = TorusElement(form)
    three = TorusElement.constant(form, 3)
    assert trace_matrix(pres) == [[three, zero, zero], [zero, zero, x3], [zero, x3, zero]]
    assert determinant(trace_matrix(pres)) == TorusElement.monomial(form, (6,), -27)


def test_regular_trace_of_generator_vanishes():
    form = SkewForm.from_integer(5, [[0, 1], [-1, 0]])
    pres = torus_presentation(form)
    assert regular_trace(pres, TorusElement.generator(form, 0)).is_zero()
    assert regular_trace(pres, TorusElement.constant(form, 1)) == TorusElement.constant(form, 25)


def test_determinant_against_sympy():
    # over the l = 1 torus the entries are ordinary Laurent polynomials
    rng = random.Random(5)
    form = SkewForm.zero(1, 2)
    x, y = sympy.symbols("x y")
    for _ in range(10):
        n = rng.randint(1, 4)
        ours, theirs = [], []
        for _ in range(n):
            row_a, row_b = [], []
            for _ in range(n):
                terms = [((rng.randint(0, 2), rng.randint(0, 2)), rng.randint(-3, 3)) for _ in range(2)]
                row_a.append(TorusElement.from_terms(form, ((e, form.ctx.from_int(c)) for e, c in terms)))
                row_b.append(sum(c * x ** e[0] * y ** e[1] for e, c in terms))
            ours.append(row_a)
            theirs.append(row_b)
        det = determinant(ours)
        poly = sympy.Poly(sympy.Matrix(theirs).det(), x, y)
        got = {e: c[0] for e, c in det.terms.items()}
        assert got == {e: int(c) for e, c in poly.terms() if c}


def test_bareiss_matches_cofactor():
    rng = random.Random(11)
    form = SkewForm.from_integer(5, [[0, 1], [-1, 0]])
    for _ in range(10):
        n = rng.randint(1, 4)
        mat = [
            [TorusElement.monomial(form, (5 * rng.randint(0, 1), 5 * rng.randint(0, 1)), rng.randint(-2, 2)) + rng.randint(-2, 2)
             for _ in range(n)]
            for _ in range(n)
        ]
        assert determinant(mat) == determinant_cofactor(mat)


@pytest.mark.parametrize("n,ell", [(1, 3), (1, 5), (2, 3)])
def test_quantum_affine_space(n, ell):
    form = SkewForm.from_integer(ell, [[0, 1], [-1, 0]] if n == 2 else [[0]])
    result = cluster_discriminant(torus_presentation(form))
    assert result.verdict
    assert result.total_exponents(ell) == {f"x{i + 1}": ell ** n * (ell - 1) for i in range(n)}
    expected = TorusElement.constant(form, scalar_power(ell, n)) * TorusElement.monomial(form, [ell ** n * (ell - 1)] * n)
    assert compare_up_to_unit(result.discriminant, expected).ok


def test_full_torus_has_unit_discriminant():
    form = SkewForm.from_integer(3, [[0]])
    result = cluster_discriminant(torus_presentation(form, inverted=(0,)), inverted_coords=(0,))
    assert result.verdict and result.exponents == {}


def test_pbw_agrees_with_monomial_basis():
    form = SkewForm.from_integer(3, [[0, 1], [-1, 0]])
    gens = [TorusElement.generator(form, 0), TorusElement.generator(form, 1)]
    frozen = torus_presentation(form).frozen
    pbw = cluster_discriminant(pbw_presentation(gens, frozen, nonneg=(0, 1)))
    plain = cluster_discriminant(torus_presentation(form))
    assert compare_up_to_unit(pbw.discriminant, plain.discriminant).ok


def test_compare_rejects_non_units():
    form = SkewForm.from_integer(3, [[0]])
    d = TorusElement.monomial(form, (6,), 27)
    assert not compare_up_to_unit(d, TorusElement.monomial(form, (3,), 27)).ok
    assert not compare_up_to_unit(d, TorusElement.monomial(form, (6,), 9)).ok
    assert compare_up_to_unit(d, TorusElement.monomial(form, (6,), -27)).ok


def test_nerve():
    seed = finite_type_seed("A2", 5)
    verify_nerve([seed, seed.mutate(0), seed.mutate(1)])
    with pytest.raises(NerveInvalid):
        verify_nerve([seed, seed.mutate_word((0, 1))])
