"""Exchange matrices, l-compatible pairs and quantum seed mutation.

Positions are 0-based throughout. An exchange matrix stores one column per
mutable position, in the order given by ``ex``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    MutationInconsistent,
    NegativePowerOfPolynomialVariable,
    NotEllCompatible,
    NotSkewSymmetrizable,
)
from .torus import DEFAULT_BUDGET, DivisionBudget, SkewForm, TorusElement, exact_left_divide


def _matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def _transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class ExchangeMatrix:
    """An N x |ex| integer matrix with mutable positions ``ex`` and inverted frozen positions ``inv``."""

    n: int
    ex: tuple
    rows: tuple
    inv: tuple = ()

    def __post_init__(self):
        ex = tuple(int(k) for k in self.ex)
        inv = tuple(sorted(int(k) for k in self.inv))
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "ex", ex)
        object.__setattr__(self, "inv", inv)
        object.__setattr__(self, "rows", rows)
        if len(set(ex)) != len(ex) or any(not 0 <= k < self.n for k in ex):
            raise ValueError(f"bad mutable positions {ex} for rank {self.n}")
        if set(inv) & set(ex) or any(not 0 <= k < self.n for k in inv):
            raise ValueError(f"inverted positions {inv} must be frozen positions")
        if len(rows) != self.n or any(len(r) != len(ex) for r in rows):
            raise ValueError(f"exchange matrix must be {self.n} x {len(ex)}")
        for c, k in enumerate(ex):
            if rows[k][c] != 0:
                raise ValueError(f"diagonal entry at position {k} must vanish")

    @classmethod
    def square(cls, matrix, ex=None, inv=()) -> "ExchangeMatrix":
        """Build from a full N x N matrix, keeping the columns listed in ``ex`` (default: all)."""
        n = len(matrix)
        ex = tuple(range(n)) if ex is None else tuple(ex)
        return cls(n, ex, [[matrix[i][k] for k in ex] for i in range(n)], inv)

    @property
    def frozen(self) -> tuple:
        return tuple(i for i in range(self.n) if i not in self.ex)

    def col_index(self, k: int) -> int:
        try:
            return self.ex.index(k)
        except ValueError:
            raise ValueError(f"position {k} is not mutable") from None

    def column(self, k: int) -> tuple:
        c = self.col_index(k)
        return tuple(r[c] for r in self.rows)

    def entry(self, i: int, k: int) -> int:
        return self.rows[i][self.col_index(k)]

    def principal(self) -> list[list[int]]:
        return [[self.rows[i][c] for c in range(len(self.ex))] for i in self.ex]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def skew_symmetrizer(bmat: ExchangeMatrix) -> tuple:
    """Minimal positive integers ``d`` (indexed like ``ex``) with ``d_i b_ij = -d_j b_ji``.

    Each connected component of the principal part is scaled independently so
    that its entries are coprime.
    """
    p = bmat.principal()
    m = len(p)
    for i in range(m):
        for j in range(m):
            if (p[i][j] == 0) != (p[j][i] == 0) or p[i][j] * p[j][i] > 0:
                raise NotSkewSymmetrizable(f"entries ({i}, {j}) and ({j}, {i}) have incompatible signs")
    d: list = [None] * m
    for start in range(m):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(m):
                if p[i][j] == 0:
                    continue
                want = d[i] * p[i][j] / (-p[j][i])
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    stack.append(j)
                elif d[j] != want:
                    raise NotSkewSymmetrizable(f"cycle through positions {i} and {j} is inconsistent")
        scale = lcm(*(x.denominator for x in (d[i] for i in comp)))
        ints = [int(d[i] * scale) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = v // g
    return tuple(int(x) for x in d)


def _components(bmat: ExchangeMatrix) -> list[list[int]]:
    p = bmat.principal()
    m = len(p)
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            i = stack.pop()
            for j in range(m):
                if p[i][j] and not seen[j]:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def compatibility_matrix(form: SkewForm, bmat: ExchangeMatrix) -> list[list[int]]:
    """``B^T lam`` modulo l, an |ex| x N matrix."""
    ell = form.ell
    lam = form.entries
    n = bmat.n
    out = []
    for c in range(len(bmat.ex)):
        out.append([sum(bmat.rows[k][c] * lam[k][i] for k in range(n)) % ell for i in range(n)])
    return out


def check_compatible(form: SkewForm, bmat: ExchangeMatrix, d=None) -> tuple:
    """Return the skew-symmetrizer ``d`` certifying l-compatibility, or raise.

    Without an explicit ``d`` the minimal skew-symmetrizer of each connected
    component is tried first, then its multiples ``c * d`` for ``c < l``; the
    first multiple satisfying the diagonal congruences is returned.
    """
    if form.n != bmat.n:
        raise ValueError("form and exchange matrix have different ranks")
    ell = form.ell
    base = skew_symmetrizer(bmat)
    comp = compatibility_matrix(form, bmat)
    for c, j in enumerate(bmat.ex):
        for i in range(bmat.n):
            if i != j and comp[c][i] % ell:
                raise NotEllCompatible(
                    f"off-diagonal congruence fails at (i={i}, j={j}): {comp[c][i]} mod {ell}", i, j
                )
    if d is not None:
        d = tuple(int(x) for x in d)
        p = bmat.principal()
        for a in range(len(d)):
            if d[a] <= 0:
                raise NotSkewSymmetrizable("skew-symmetrizer entries must be positive")
            for b in range(len(d)):
                if d[a] * p[a][b] != -d[b] * p[b][a]:
                    raise NotSkewSymmetrizable(f"d does not skew-symmetrize at ({a}, {b})")
        for c, j in enumerate(bmat.ex):
            if (comp[c][j] - d[c]) % ell:
                raise NotEllCompatible(f"diagonal congruence fails at j={j}: {comp[c][j]} != {d[c]} mod {ell}", j, j)
        return d
    out = list(base)
    for members in _components(bmat):
        for mult in range(1, max(ell, 1) + 1):
            if all((comp[c][bmat.ex[c]] - mult * base[c]) % ell == 0 for c in members):
                for c in members:
                    out[c] = mult * base[c]
                break
        else:
            c = members[0]
            j = bmat.ex[c]
            raise NotEllCompatible(
                f"diagonal congruence fails at j={j}: {comp[c][j]} is not a multiple-compatible value mod {ell}", j, j
            )
    return tuple(out)


def is_coprime(ell: int, d) -> bool:
    """The standing hypothesis: l odd and coprime to every skew-symmetrizer entry."""
    return ell % 2 == 1 and all(gcd(ell, x) == 1 for x in d)


def e_matrix(bmat: ExchangeMatrix, k: int, sign: int) -> list[list[int]]:
    n = bmat.n
    col = bmat.column(k)
    e = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        e[i][k] = -1 if i == k else max(0, -sign * col[i])
    return e


def f_matrix(bmat: ExchangeMatrix, k: int, sign: int) -> list[list[int]]:
    m = len(bmat.ex)
    ck = bmat.col_index(k)
    f = [[int(i == j) for j in range(m)] for i in range(m)]
    for j in range(m):
        f[ck][j] = -1 if j == ck else max(0, sign * bmat.rows[k][j])
    return f


def mutate_matrix(bmat: ExchangeMatrix, k: int, sign: int = 1) -> ExchangeMatrix:
    rows = _matmul(_matmul(e_matrix(bmat, k, sign), [list(r) for r in bmat.rows]), f_matrix(bmat, k, sign))
    return ExchangeMatrix(bmat.n, bmat.ex, rows, bmat.inv)


def mutate_matrix_classical(bmat: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Entrywise mutation rule, used as an independent check of the matrix product form."""
    ck = bmat.col_index(k)
    rows = []
    for i in range(bmat.n):
        row = []
        for c in range(len(bmat.ex)):
            b = bmat.rows[i][c]
            if i == k or c == ck:
                row.append(-b)
            else:
                bik, bkj = bmat.rows[i][ck], bmat.rows[k][c]
                row.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        rows.append(row)
    return ExchangeMatrix(bmat.n, bmat.ex, rows, bmat.inv)


def _congruent(matrix: list, e: list) -> list:
    return _matmul(_matmul(_transpose(e), matrix), e)


def mutate_pair(form: SkewForm, bmat: ExchangeMatrix, k: int) -> tuple[SkewForm, ExchangeMatrix]:
    """Mutate a compatible pair in direction ``k``; both sign choices must agree."""
    if k not in bmat.ex:
        raise ValueError(f"position {k} is not mutable")
    results = []
    for sign in (1, -1):
        e = e_matrix(bmat, k, sign)
        lam = _congruent([list(r) for r in form.entries], e)
        lift = None
        if form.lift is not None:
            lift = _congruent([list(r) for r in form.lift], e)
        results.append((mutate_matrix(bmat, k, sign), SkewForm(form.ell, lam, lift), lift))
    (b_plus, f_plus, l_plus), (b_minus, f_minus, l_minus) = results
    if b_plus != b_minus:
        raise MutationInconsistent(f"matrix mutation at {k} depends on the sign")
    if f_plus != f_minus or l_plus != l_minus:
        raise MutationInconsistent(f"form mutation at {k} depends on the sign")
    return f_plus, b_plus


@dataclass(frozen=True)
class Seed:
    """A compatible pair together with a toric frame, stored as the images of basis vectors."""

    form: SkewForm
    bmat: ExchangeMatrix
    frame: tuple
    d: tuple
    budget: DivisionBudget = field(default=DEFAULT_BUDGET, compare=False)

    @classmethod
    def initial(cls, form: SkewForm, bmat: ExchangeMatrix, d=None, frame=None, budget=DEFAULT_BUDGET) -> "Seed":
        """A seed whose frame is the standard one ``e_i -> X^{e_i}`` unless ``frame`` is given."""
        d = check_compatible(form, bmat, d)
        if frame is None:
            frame = tuple(TorusElement.generator(form, i) for i in range(form.n))
        else:
            frame = tuple(frame)
            if len(frame) != form.n:
                raise ValueError("frame must have one value per position")
        return cls(form, bmat, frame, d, budget)

    @property
    def n(self) -> int:
        return self.bmat.n

    @property
    def ell(self) -> int:
        return self.form.ell

    @property
    def ex(self) -> tuple:
        return self.bmat.ex

    @property
    def inv(self) -> tuple:
        return self.bmat.inv

    @property
    def torus_form(self) -> SkewForm:
        """The form of the ambient torus in which the frame values live."""
        return self.frame[0].form

    def coprime(self) -> bool:
        return is_coprime(self.ell, self.d)

    def mutate(self, k: int) -> "Seed":
        return mutate_seed(self, k)

    def mutate_word(self, word) -> "Seed":
        seed = self
        for k in word:
            seed = mutate_seed(seed, k)
        return seed


def frame_monomial(seed: Seed, g) -> TorusElement:
    """The frame value at an arbitrary lattice vector ``g``.

    Built as an ordered product of the basis values, corrected by the power of
    zeta that makes the result independent of the ordering.
    """
    form = seed.form
    g = tuple(int(x) for x in g)
    ambient = seed.torus_form
    twist = 0
    for i in range(len(g)):
        if g[i]:
            for j in range(i + 1, len(g)):
                twist += g[i] * g[j] * form.entries[i][j]
    result = TorusElement.constant(ambient, 1)
    for i, gi in enumerate(g):
        if gi == 0:
            continue
        val = seed.frame[i]
        if gi < 0 and not val.is_monomial():
            raise NegativePowerOfPolynomialVariable(f"negative power of polynomial frame value at position {i}")
        result = result * (val ** gi)
    return result.mul_zeta(-twist)


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Mutate in direction ``k``; the new value at ``k`` comes from an exact left division."""
    form2, bmat2 = mutate_pair(seed.form, seed.bmat, k)
    col = seed.bmat.column(k)
    plus = tuple(max(x, 0) for x in col)
    minus = tuple(min(x, 0) for x in col)
    ek = tuple(int(i == k) for i in range(seed.n))
    form = seed.form
    first = frame_monomial(seed, plus).mul_zeta(form.pair(ek, plus))
    second = frame_monomial(seed, tuple(-x for x in minus)).mul_zeta(-form.pair(ek, minus))
    numerator = first + second
    new_value = exact_left_divide(numerator, seed.frame[k], seed.budget)
    frame = list(seed.frame)
    frame[k] = new_value
    d = check_compatible(form2, bmat2, seed.d)
    return Seed(form2, bmat2, tuple(frame), d, seed.budget)


def classical_exchange(seed: Seed, k: int) -> TorusElement:
    """``(prod_{b>0} x_i^b + prod_{b<0} x_i^-b) / x_k`` for a commutative seed."""
    if seed.ell != 1:
        raise ValueError("classical exchange applies to l = 1 seeds")
    col = seed.bmat.column(k)
    one = TorusElement.constant(seed.torus_form, 1)
    pos, neg = one, one
    for i, b in enumerate(col):
        if b > 0:
            pos = pos * seed.frame[i] ** b
        elif b < 0:
            neg = neg * seed.frame[i] ** (-b)
    return exact_left_divide(pos + neg, seed.frame[k])


def exchange_constant(seed: Seed, j: int) -> int:
    """``lam(-e_j - [b^j]_-, -e_j + [b^j]_+)`` modulo l; equals ``d_j`` for compatible pairs."""
    col = seed.bmat.column(j)
    ej = [int(i == j) for i in range(seed.n)]
    z = [-ej[i] - min(col[i], 0) for i in range(seed.n)]
    y = [-ej[i] + max(col[i], 0) for i in range(seed.n)]
    return seed.form.pair(z, y)


@dataclass
class SeedReport:
    ok: bool
    failures: list


def validate_seed(seed: Seed) -> SeedReport:
    """Check compatibility, the lift and the commutation relations of the frame."""
    failures = []
    try:
        check_compatible(seed.form, seed.bmat, seed.d)
    except (NotEllCompatible, NotSkewSymmetrizable) as exc:
        failures.append(f"compatibility: {exc}")
    ctx = seed.form.ctx
    for i in range(seed.n):
        for j in range(i + 1, seed.n):
            lhs = seed.frame[i] * seed.frame[j]
            rhs = (seed.frame[j] * seed.frame[i]).mul_zeta(2 * seed.form.entries[i][j])
            if lhs != rhs:
                failures.append(f"frame commutation fails at ({i}, {j})")
    if ctx.ell > 1 and seed.torus_form.n != seed.n:
        failures.append("frame values live in a torus of different rank")
    return SeedReport(not failures, failures)


def seed_to_json(seed: Seed) -> dict:
    standard = all(v == TorusElement.generator(seed.torus_form, i) for i, v in enumerate(seed.frame))
    return {
        "l": seed.ell,
        "N": seed.n,
        "ex": list(seed.ex),
        "inv": list(seed.inv),
        "lambda": [list(r) for r in seed.form.entries],
        "lambda_lift": None if seed.form.lift is None else [list(r) for r in seed.form.lift],
        "B": seed.bmat.as_lists(),
        "d": list(seed.d),
        "frame": "standard" if standard else [v.to_json() for v in seed.frame],
    }


def seed_from_json(data: dict) -> Seed:
    ell = int(data["l"])
    n = int(data["N"])
    lam = data["lambda"]
    lift = data.get("lambda_lift")
    form = SkewForm(ell, lam, lift)
    if form.n != n:
        raise ValueError(f"form has rank {form.n}, expected {n}")
    bmat = ExchangeMatrix(n, tuple(data["ex"]), data["B"], tuple(data.get("inv", ())))
    frame_data = data.get("frame", "standard")
    frame = None
    if frame_data != "standard":
        frame = [TorusElement.from_json(form, v) for v in frame_data]
    return Seed.initial(form, bmat, data.get("d"), frame)
