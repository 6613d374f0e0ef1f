"""Regular traces and discriminants of algebras that are free over a central subalgebra.

A presentation supplies an ordered basis, a multiplication and a way to
decompose an element over that basis. Central coefficients are
:class:`~rootqca.torus.TorusElement` values whose exponents commute with
everything, so determinants over them are ordinary commutative determinants.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable

from .errors import DecompositionFailed, DivisionNotExact, NerveInvalid, NotExactlyDivisible
from .torus import SkewForm, TorusElement, exact_left_divide, in_mixed_torus


@dataclass
class FrozenFactor:
    """The l-th power of a frozen variable, written in the central coordinate ring."""

    name: str
    power: TorusElement
    inverted: bool = False


@dataclass
class FreeModulePresentation:
    """An algebra presented as a free module over a commutative central ring.

    ``decompose(y)`` returns one central coefficient per basis element with
    ``y == sum(coeff[m] * basis[m])``. ``central_form`` is the form of the
    torus holding the coefficients; ``nonneg`` lists central coordinates that
    must stay non-negative (polynomial, not Laurent, directions).
    """

    basis: list
    multiply: Callable
    decompose: Callable
    central_form: SkewForm
    num_variables: int
    frozen: list = field(default_factory=list)
    nonneg: tuple = ()
    label: str = ""

    @property
    def ell(self) -> int:
        return self.central_form.ell

    @property
    def rank(self) -> int:
        return len(self.basis)

    def central_one(self) -> TorusElement:
        return TorusElement.constant(self.central_form, 1)

    def central_zero(self) -> TorusElement:
        return TorusElement(self.central_form)


# -- decompositions -----------------------------------------------------------


def residue_vectors(ell: int, n: int) -> list[tuple]:
    """All vectors in ``[0, l)^n`` in lexicographic order."""
    return [tuple(r) for r in product(range(ell), repeat=n)]


def torus_presentation(form: SkewForm, frozen=None, inverted=(), label: str = "") -> FreeModulePresentation:
    """The torus (or its polynomial part) as a module over ``Z[zeta][X_i^l]`` with basis ``X^r``, ``r`` in ``[0, l)^N``."""
    ell, n = form.ell, form.n
    basis_exps = residue_vectors(ell, n)
    basis = [TorusElement.monomial(form, r) for r in basis_exps]
    where = {r: m for m, r in enumerate(basis_exps)}

    def decompose(y: TorusElement) -> list:
        coeffs = [{} for _ in basis]
        for g, c in y.terms.items():
            r = tuple(x % ell for x in g)
            f = tuple(x - s for x, s in zip(g, r))
            coeffs[where[r]][f] = c
        return [TorusElement(form, t) for t in coeffs]

    frozen = list(range(n)) if frozen is None else list(frozen)
    inverted = set(inverted)
    factors = [
        FrozenFactor(f"x{i + 1}", TorusElement.monomial(form, [ell * int(j == i) for j in range(n)]), i in inverted)
        for i in frozen
    ]
    nonneg = tuple(i for i in frozen if i not in inverted)
    return FreeModulePresentation(basis, lambda a, b: a * b, decompose, form, n, factors, nonneg, label)


def _lex_keys(n: int):
    """Translation-invariant total orders on Z^n: signed lex orders, optionally graded."""
    for graded in (True, False):
        for perm in permutations(range(n)):
            for signs in product((1, -1), repeat=n):
                if graded:
                    yield lambda f, p=perm, s=signs: (sum(f),) + tuple(s[i] * f[p[i]] for i in range(len(p)))
                else:
                    yield lambda f, p=perm, s=signs: tuple(s[i] * f[p[i]] for i in range(len(p)))


def triangular_order(basis: list, ell: int):
    """Find a term order in which leading exponents of ``basis`` are distinct mod l with unit coefficients.

    Returns ``(key, leads)`` or ``None``.
    """
    if not basis:
        return None
    n = basis[0].form.n
    ctx = basis[0].ctx
    for key in _lex_keys(n):
        leads = {}
        for m, b in enumerate(basis):
            exp = max(b.terms, key=key)
            r = tuple(x % ell for x in exp)
            if r in leads or ctx.unit_index(b.terms[exp]) is None:
                break
            leads[r] = (m, exp, b.terms[exp])
        else:
            return key, leads
    return None


def decompose_triangular(y: TorusElement, basis: list, key, leads: dict, max_steps: int = 100000) -> list:
    """Decompose by repeatedly cancelling the leading term with a central multiple of a basis element."""
    form = y.form
    ctx = form.ctx
    ell = form.ell
    coeffs = [{} for _ in basis]
    rem = TorusElement(form, dict(y.terms))
    steps = 0
    while rem.terms:
        steps += 1
        if steps > max_steps:
            raise DecompositionFailed("triangular reduction did not terminate")
        h = max(rem.terms, key=key)
        c = rem.terms[h]
        r = tuple(x % ell for x in h)
        if r not in leads:
            raise DecompositionFailed(f"no basis element leads with residue {r}")
        m, g, lc = leads[r]
        f = tuple(a - b for a, b in zip(h, g))
        try:
            q = ctx.divide(c, lc)
        except DivisionNotExact as exc:
            raise DecompositionFailed("leading coefficient is not divisible") from exc
        coeffs[m][f] = ctx.add(coeffs[m][f], q) if f in coeffs[m] else q
        rem = rem - basis[m] * TorusElement(form, {f: q})
    return [TorusElement(form, {e: c for e, c in t.items() if any(c)}) for t in coeffs]


def decompose_linear(y: TorusElement, basis: list, central_lattice: int | None = None) -> list:
    """Decompose by solving an exact linear system over Q(zeta).

    Unknowns are the coefficients of central monomials ``X^f`` (``f`` in
    ``l Z^N``) in each basis coefficient; candidates are ``f = g - h`` for
    ``g`` in the support of ``y`` and ``h`` in the support of a basis element.
    """
    form = y.form
    ctx = form.ctx
    ell = form.ell if central_lattice is None else central_lattice
    unknowns = []
    for m, b in enumerate(basis):
        seen = set()
        for g in y.terms:
            for h in b.terms:
                f = tuple(a - c for a, c in zip(g, h))
                if all(x % ell == 0 for x in f) and f not in seen:
                    seen.add(f)
                    unknowns.append((m, f))
    rows: dict = {}
    for col, (m, f) in enumerate(unknowns):
        for h, c in basis[m].terms.items():
            e = tuple(a + b for a, b in zip(f, h))
            rows.setdefault(e, {})[col] = c
    for g in y.terms:
        rows.setdefault(g, {})
    exps = list(rows)
    deg = ctx.degree
    frac = lambda t: tuple(Fraction(x) for x in t)
    zero = (Fraction(0),) * deg
    mat = [[frac(rows[e].get(col, ctx.zero)) for col in range(len(unknowns))] + [frac(y.terms.get(e, ctx.zero))] for e in exps]
    ncol = len(unknowns)
    pivots = []
    r = 0
    for col in range(ncol):
        piv = next((i for i in range(r, len(mat)) if any(mat[i][col])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ctx.divide(ctx.one, mat[r][col])
        mat[r] = [ctx.mul(x, inv) if any(x) else zero for x in mat[r]]
        for i in range(len(mat)):
            if i != r and any(mat[i][col]):
                factor = mat[i][col]
                mat[i] = [ctx.sub(a, ctx.mul(factor, b)) if any(b) else a for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    if any(any(row[-1]) for row in mat[r:]):
        raise DecompositionFailed("element is not in the span of the basis over the centre")
    if len(pivots) != ncol:
        raise DecompositionFailed("decomposition is not unique")
    coeffs = [{} for _ in basis]
    for i, col in enumerate(pivots):
        val = mat[i][-1]
        if not any(val):
            continue
        if any(x.denominator != 1 for x in val):
            raise DecompositionFailed("coefficients are not integral")
        m, f = unknowns[col]
        coeffs[m][f] = tuple(int(x) for x in val)
    return [TorusElement(form, t) for t in coeffs]


def pbw_presentation(generators: list, frozen: list, nonneg=(), label: str = "") -> FreeModulePresentation:
    """Ordered monomials ``g_1^{m_1} ... g_N^{m_N}``, ``m`` in ``[0, l)^N``, in the torus holding the generators."""
    form = generators[0].form
    ell = form.ell
    powers = [[g ** k for k in range(ell)] for g in generators]
    basis = []
    for m in residue_vectors(ell, len(generators)):
        b = TorusElement.constant(form, 1)
        for g, k in enumerate(m):
            if k:
                b = b * powers[g][k]
        basis.append(b)
    tri = triangular_order(basis, ell)
    if tri is not None:
        key, leads = tri

        def decompose(y):
            return decompose_triangular(y, basis, key, leads)
    else:

        def decompose(y):
            return decompose_linear(y, basis)

    return FreeModulePresentation(basis, lambda a, b: a * b, decompose, form, len(generators), frozen, tuple(nonneg), label)


def decompose_over_center(presentation: FreeModulePresentation, y) -> list:
    return presentation.decompose(y)


# -- traces -------------------------------------------------------------------


def regular_trace(presentation: FreeModulePresentation, y) -> TorusElement:
    """Trace of left multiplication by ``y`` on the free module."""
    total = presentation.central_zero()
    for m, b in enumerate(presentation.basis):
        total = total + presentation.decompose(presentation.multiply(y, b))[m]
    return total


def trace_matrix(presentation: FreeModulePresentation) -> list[list[TorusElement]]:
    basis = presentation.basis
    n = len(basis)
    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mat[i][j] = regular_trace(presentation, presentation.multiply(basis[i], basis[j]))
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j] != mat[j][i]:
                raise AssertionError(f"trace form is not symmetric at ({i}, {j})")
    return mat


# -- determinants -------------------------------------------------------------


def _perm_sign(order: list) -> int:
    sign, seen = 1, [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _blocks(mat):
    """Connected components of the row/column incidence graph of non-zero entries."""
    n = len(mat)
    parent = list(range(2 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if mat[i][j]:
                a, b = find(i), find(n + j)
                if a != b:
                    parent[a] = b
    comps: dict = {}
    for v in range(2 * n):
        comps.setdefault(find(v), ([], []))[0 if v < n else 1].append(v if v < n else v - n)
    return list(comps.values())


def determinant(mat: list, zero: TorusElement | None = None) -> TorusElement:
    """Determinant over a commutative ring of central torus elements.

    The matrix is first split into independent blocks; each block is then
    reduced by fraction-free (Bareiss) elimination with exact division.
    """
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    form = mat[0][0].form
    blocks = _blocks(mat)
    rows_order, cols_order = [], []
    result = TorusElement.constant(form, 1)
    for rows, cols in blocks:
        if len(rows) != len(cols):
            return TorusElement(form)
        rows_order += rows
        cols_order += cols
        sub = [[mat[i][j] for j in cols] for i in rows]
        result = result * _bareiss(sub)
        if result.is_zero():
            return result
    sign = _perm_sign(rows_order) * _perm_sign(cols_order)
    return result if sign == 1 else -result


def _bareiss(mat: list) -> TorusElement:
    n = len(mat)
    form = mat[0][0].form
    if n == 1:
        return mat[0][0]
    m = [row[:] for row in mat]
    sign = 1
    prev = TorusElement.constant(form, 1)
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if m[i][k]]
        if not candidates:
            return TorusElement(form)
        piv = min(candidates, key=lambda i: len(m[i][k]))
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pk - mik * m[k][j]
                m[i][j] = exact_left_divide(num, prev) if num else num
            m[i][k] = TorusElement(form)
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant_cofactor(mat: list) -> TorusElement:
    """Laplace expansion with memoisation on column subsets; an independent check for small matrices."""
    n = len(mat)
    if n > 12:
        raise ValueError("cofactor expansion is limited to 12 x 12")
    form = mat[0][0].form
    memo: dict = {}

    def minor(row: int, cols: tuple) -> TorusElement:
        if row == n:
            return TorusElement.constant(form, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = TorusElement(form)
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if entry:
                term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
                total = total + term if pos % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


# -- comparing with predictions -----------------------------------------------


@dataclass
class UnitVerdict:
    ok: bool
    quotient: TorusElement | None
    reason: str = ""


def is_central_unit(a: TorusElement, inverted=()) -> bool:
    """A monomial with unit coefficient whose exponent only involves ``inverted`` coordinates."""
    if not a.is_monomial():
        return False
    (exp, c), = a.terms.items()
    inv = set(inverted)
    if any(x for i, x in enumerate(exp) if i not in inv):
        return False
    return abs(a.ctx.norm(c)) == 1


def compare_up_to_unit(d: TorusElement, expected: TorusElement, inverted=()) -> UnitVerdict:
    try:
        q = exact_left_divide(d, expected)
    except NotExactlyDivisible as exc:
        return UnitVerdict(False, None, f"not divisible: {exc}")
    if not is_central_unit(q, inverted):
        return UnitVerdict(False, q, "quotient is not a unit")
    return UnitVerdict(True, q)


def verify_nerve(seeds: list) -> None:
    """Raise unless ``seeds`` are linked by single mutations covering every mutable direction."""
    from .exchange_graph import canonical_key

    if not seeds:
        raise NerveInvalid("empty seed collection")
    keys = [canonical_key(s) for s in seeds]
    index = {k: i for i, k in enumerate(keys)}
    adj = {i: set() for i in range(len(seeds))}
    realised = set()
    for i, s in enumerate(seeds):
        for k in s.ex:
            j = index.get(canonical_key(s.mutate(k)))
            if j is not None:
                adj[i].add(j)
                adj[j].add(i)
                realised.add(k)
    missing = set(seeds[0].ex) - realised
    if missing:
        raise NerveInvalid(f"mutable directions {sorted(missing)} are not realised inside the collection")
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(seeds):
        raise NerveInvalid("seed collection is not connected by mutations")


@dataclass
class DiscriminantResult:
    discriminant: TorusElement
    expected: TorusElement | None
    verdict: bool
    exponents: dict
    unit: TorusElement | None
    seconds: float
    reason: str = ""

    def total_exponents(self, ell: int) -> dict:
        return {k: ell * v for k, v in self.exponents.items()}


def scalar_power(ell: int, num_variables: int) -> int:
    """``l^(N l^N)``."""
    return ell ** (num_variables * ell ** num_variables)


def factor_discriminant(presentation: FreeModulePresentation, d: TorusElement) -> tuple:
    """Strip ``l^(N l^N)`` and maximal powers of the frozen factors; return ``(exponents, remainder, reason)``."""
    ell = presentation.ell
    ctx = d.ctx
    scalar = scalar_power(ell, presentation.num_variables)
    try:
        q = TorusElement(d.form, {e: ctx.divide(c, ctx.from_int(scalar)) for e, c in d.terms.items()})
    except DivisionNotExact:
        return {}, d, f"not divisible by {ell}^{presentation.num_variables * ell ** presentation.num_variables}"
    exponents = {}
    for factor in presentation.frozen:
        if factor.inverted:
            continue
        a = 0
        while a < 100000:
            try:
                nxt = exact_left_divide(q, factor.power)
            except NotExactlyDivisible:
                break
            if not in_mixed_torus(nxt, [i for i in range(d.form.n) if i not in presentation.nonneg]):
                break
            q = nxt
            a += 1
        exponents[factor.name] = a
    return exponents, q, ""


def cluster_discriminant(presentation: FreeModulePresentation, seeds=None, inverted_coords=()) -> DiscriminantResult:
    """Discriminant of the trace form, factored as ``l^(N l^N)`` times powers of frozen l-th powers."""
    start = time.perf_counter()
    if seeds is not None:
        verify_nerve(list(seeds))
    mat = trace_matrix(presentation)
    d = determinant(mat)
    exponents, remainder, reason = factor_discriminant(presentation, d)
    ok = not reason and is_central_unit(remainder, inverted_coords)
    if not reason and not ok:
        reason = "remaining factor is not a unit"
    expected = None
    if not reason or ok:
        expected = TorusElement.constant(d.form, scalar_power(presentation.ell, presentation.num_variables))
        for factor in presentation.frozen:
            if factor.name in exponents:
                expected = expected * factor.power ** exponents[factor.name]
    return DiscriminantResult(d, expected, ok, exponents, remainder, time.perf_counter() - start, reason)
