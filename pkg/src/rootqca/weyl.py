"""Quantized Weyl algebras at a root of unity, in PBW normal form.

Generators are ``x_i`` and ``w_i = (eps - 1) y_i`` with ``eps = zeta^2``;
normal monomials are ``x_1^{a_1} ... x_n^{a_n} w_1^{b_1} ... w_n^{b_n}``.
Products are computed by letting generators act on normal monomials from the
left, with the straightening rules obtained from the ``(x, y)`` relations
after scaling by ``eps - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cyclotomic import CyclotomicInteger, root_context
from .discriminant import (
    DiscriminantResult,
    FreeModulePresentation,
    FrozenFactor,
    cluster_discriminant,
    compare_up_to_unit,
    residue_vectors,
    scalar_power,
)
from .errors import NotEllCompatible, NotSkewSymmetrizable
from .seeds import ExchangeMatrix, Seed, check_compatible
from .torus import SkewForm, TorusElement


class WeylAlgebra:
    """The Z[zeta]-form generated by ``x_i`` and ``w_i`` for a skew-symmetric ``Q``."""

    def __init__(self, n: int, ell: int, q=None):
        if n < 1:
            raise ValueError("need at least one pair of generators")
        if ell < 2:
            raise ValueError("the Weyl algebra needs l > 1")
        q = [[0] * n for _ in range(n)] if q is None else [list(map(int, r)) for r in q]
        if len(q) != n or any(len(r) != n for r in q):
            raise ValueError(f"Q must be {n} x {n}")
        for i in range(n):
            for j in range(n):
                if q[i][j] != -q[j][i]:
                    raise ValueError("Q must be skew-symmetric")
        self.n = n
        self.ell = ell
        self.q = q
        self.ctx = root_context(ell)
        self._w_cache: dict = {}
        self._mono_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and (self.n, self.ell, self.q) == (other.n, other.ell, other.q)

    def __hash__(self):
        return hash((self.n, self.ell, tuple(map(tuple, self.q))))

    def eps(self, k: int) -> tuple:
        return self.ctx.zeta(2 * k)

    # -- elements -----------------------------------------------------------

    def element(self, terms) -> "WeylElement":
        return WeylElement(self, {m: c for m, c in terms.items() if any(c)})

    def one(self) -> "WeylElement":
        return self.scalar(1)

    def scalar(self, c) -> "WeylElement":
        coeffs = c.coeffs if isinstance(c, CyclotomicInteger) else self.ctx.from_int(c) if isinstance(c, int) else tuple(c)
        return self.element({(0,) * (2 * self.n): coeffs})

    def monomial(self, a, b, c=1) -> "WeylElement":
        coeffs = c.coeffs if isinstance(c, CyclotomicInteger) else self.ctx.from_int(c) if isinstance(c, int) else tuple(c)
        return self.element({tuple(a) + tuple(b): coeffs})

    def x(self, i: int) -> "WeylElement":
        """The generator ``x_i`` (0-based)."""
        a = [0] * self.n
        a[i] = 1
        return self.monomial(a, [0] * self.n)

    def w(self, i: int) -> "WeylElement":
        """The generator ``w_i = (eps - 1) y_i`` (0-based)."""
        b = [0] * self.n
        b[i] = 1
        return self.monomial([0] * self.n, b)

    # -- left actions of generators on normal monomials -----------------------

    def _left_x(self, i: int, mono: tuple) -> tuple:
        """``x_i`` times a normal monomial: a single term."""
        q = self.q
        twist = -sum(mono[r] * (1 + q[r][i]) for r in range(i))
        out = list(mono)
        out[i] += 1
        return tuple(out), twist

    def _apply_x(self, i: int, elem: dict) -> dict:
        ctx = self.ctx
        out = {}
        for mono, c in elem.items():
            m2, twist = self._left_x(i, mono)
            out[m2] = ctx.add(out[m2], ctx.mul_zeta(c, 2 * twist)) if m2 in out else ctx.mul_zeta(c, 2 * twist)
        return out

    def _left_w(self, j: int, mono: tuple) -> dict:
        key = (j, mono)
        cached = self._w_cache.get(key)
        if cached is not None:
            return cached
        n, q, ctx = self.n, self.q, self.ctx
        a = mono[:n]
        p = next((r for r in range(n) if a[r]), None)
        if p is None:
            twist = sum(mono[n + r] * q[j][r] for r in range(j))
            out = list(mono)
            out[n + j] += 1
            result = {tuple(out): ctx.zeta(2 * twist)}
        else:
            rest = list(mono)
            rest[p] -= 1
            rest = tuple(rest)
            inner = self._left_w(j, rest)
            if p != j:
                # w_j x_p = eps^c x_p w_j
                c = q[p][j] if p < j else q[p][j] - 1
                result = _scale_dict(ctx, self._apply_x(p, inner), 2 * c)
            else:
                # w_j x_j = eps^-1 (x_j w_j - (eps - 1) - (eps - 1) sum_{r<j} w_r x_r)
                result = _scale_dict(ctx, self._apply_x(j, inner), -2)
                correction = {rest: ctx.one}
                for r in range(j):
                    correction = _add_dicts(ctx, correction, self._apply_w(r, self._apply_x(r, {rest: ctx.one})))
                factor = ctx.mul_zeta(ctx.sub(self.eps(1), ctx.one), -2)
                result = _add_dicts(ctx, result, _mul_dict(ctx, correction, ctx.neg(factor)))
        self._w_cache[key] = result
        return result

    def _apply_w(self, j: int, elem: dict) -> dict:
        out: dict = {}
        for mono, c in elem.items():
            for m2, c2 in self._left_w(j, mono).items():
                prod = self.ctx.mul(c, c2)
                out[m2] = self.ctx.add(out[m2], prod) if m2 in out else prod
        return {m: c for m, c in out.items() if any(c)}

    def _mono_product(self, m1: tuple, m2: tuple) -> dict:
        key = (m1, m2)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        n = self.n
        elem = {m2: self.ctx.one}
        for j in range(n - 1, -1, -1):
            for _ in range(m1[n + j]):
                elem = self._apply_w(j, elem)
        for i in range(n - 1, -1, -1):
            for _ in range(m1[i]):
                elem = self._apply_x(i, elem)
        elem = {m: c for m, c in elem.items() if any(c)}
        self._mono_cache[key] = elem
        return elem

    def multiply(self, a: "WeylElement", b: "WeylElement") -> "WeylElement":
        if a.algebra != b.algebra:
            raise ValueError("elements of different Weyl algebras")
        ctx = self.ctx
        out: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c12 = ctx.mul(c1, c2)
                for m, c in self._mono_product(m1, m2).items():
                    v = ctx.mul(c12, c)
                    out[m] = ctx.add(out[m], v) if m in out else v
        return self.element(out)

    # -- distinguished elements ---------------------------------------------

    def central_z(self, i: int) -> "WeylElement":
        """``z_i = (-1)^(i+1) [x_i, y_i] = (-1)^(i+1) (1 + sum_{r <= i} w_r x_r)`` for 0-based ``i``."""
        if not 0 <= i < self.n:
            raise ValueError(f"index {i} out of range 0..{self.n - 1}")
        total = self.one()
        for r in range(i + 1):
            total = total + self.w(r) * self.x(r)
        return total if i % 2 == 1 else -total

    def central_z_expanded(self, i: int) -> "WeylElement":
        """``(-1)^(i+1) (1 + sum_{r <= i} x_r w_r)``; agrees with :meth:`central_z` only up to a unit when ``n = 1``."""
        if not 0 <= i < self.n:
            raise ValueError(f"index {i} out of range 0..{self.n - 1}")
        total = self.one()
        for r in range(i + 1):
            total = total + self.x(r) * self.w(r)
        return total if i % 2 == 1 else -total

    def frame(self) -> list:
        """Values ``(-1)^(i+1) zeta x_i`` followed by ``z_i``, for ``i = 0..n-1``."""
        zeta = CyclotomicInteger(self.ctx, self.ctx.zeta(1))
        out = [self.x(i).scale(zeta if (i + 1) % 2 == 0 else -zeta) for i in range(self.n)]
        out += [self.central_z(i) for i in range(self.n)]
        return out


def _scale_dict(ctx, d: dict, k: int) -> dict:
    return {m: ctx.mul_zeta(c, k) for m, c in d.items()}


def _mul_dict(ctx, d: dict, c) -> dict:
    return {m: ctx.mul(x, c) for m, x in d.items()}


def _add_dicts(ctx, a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = ctx.add(out[m], c) if m in out else c
    return {m: c for m, c in out.items() if any(c)}


class WeylElement:
    """An element of a :class:`WeylAlgebra` as a map from normal monomials to coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: WeylAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, WeylElement):
            return other
        if isinstance(other, (int, CyclotomicInteger)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.algebra.element(_add_dicts(self.algebra.ctx, self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        ctx = self.algebra.ctx
        return WeylElement(self.algebra, {m: ctx.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, CyclotomicInteger)):
            return self.scale(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.algebra.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, CyclotomicInteger)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not available")
        result = self.algebra.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "WeylElement":
        ctx = self.algebra.ctx
        coeffs = c.coeffs if isinstance(c, CyclotomicInteger) else ctx.from_int(c) if isinstance(c, int) else tuple(c)
        return self.algebra.element({m: ctx.mul(x, coeffs) for m, x in self.terms.items()})

    def mul_zeta(self, k: int) -> "WeylElement":
        ctx = self.algebra.ctx
        return WeylElement(self.algebra, {m: ctx.mul_zeta(c, k) for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        n = self.algebra.n
        ctx = self.algebra.ctx
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            gens = [f"x{i + 1}^{m[i]}" for i in range(n) if m[i]] + [f"w{i + 1}^{m[n + i]}" for i in range(n) if m[n + i]]
            parts.append(f"({ctx.render(self.terms[m])})" + ("*" + "*".join(gens) if gens else ""))
        return " + ".join(parts)

    __repr__ = __str__


# -- seeds --------------------------------------------------------------------


def block_form(n: int, q) -> list[list[int]]:
    """The block matrix ``[[Q', -R], [R, 0]]`` built from ``Q``."""
    qp = [[(q[i][j] + 1 if i < j else -q[j][i] - 1 if i > j else 0) for j in range(n)] for i in range(n)]
    r = [[(1 if i < j else q[j][i] if i > j else 0) for j in range(n)] for i in range(n)]
    top = [qp[i] + [-x for x in r[i]] for i in range(n)]
    bottom = [r[i] + [0] * n for i in range(n)]
    return top + bottom


def exchange_block(n: int) -> list[list[int]]:
    """``S`` with ``S[i][n+1-i] = 1`` and ``S[i][n-i] = -1`` (1-based indices)."""
    s = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        if 1 <= n + 1 - i <= n:
            s[i - 1][n - i] = 1
        if 1 <= n - i <= n:
            s[i - 1][n - i - 1] = -1
    return s


def observed_form(frame: list, ell: int) -> list:
    """Integer ``k`` in ``[0, l)`` with ``F_i F_j = eps^k F_j F_i`` for every pair, or ``None`` where none exists."""
    size = len(frame)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            lhs = frame[i] * frame[j]
            rhs = frame[j] * frame[i]
            k = next((k for k in range(ell) if lhs == rhs.mul_zeta(2 * k)), None)
            out[i][j] = k
            out[j][i] = None if k is None else (-k) % ell
    return out


def weyl_frame_monomial(frame: list, lam: list, g) -> WeylElement:
    """``zeta^{-sum_{i<j} g_i g_j lam_ij}`` times the ordered product of frame powers (non-negative ``g``)."""
    algebra = frame[0].algebra
    twist = sum(g[i] * g[j] * lam[i][j] for i in range(len(g)) for j in range(i + 1, len(g)))
    out = algebra.one()
    for i, gi in enumerate(g):
        if gi < 0:
            raise ValueError("negative exponents are not available in the Weyl algebra")
        if gi:
            out = out * frame[i] ** gi
    return out.mul_zeta(-twist)


@dataclass
class WeylSeedReport:
    """What the Weyl seed construction observed, including disagreements with the block formulas.

    ``bmatrix_block`` comes from the index formula for ``S``; ``bmatrix``
    is the exchange matrix actually realised by the relations, found together
    with unit rescalings ``frozen_units`` (pairs ``(sign, k)`` meaning
    ``sign * zeta^k``) of the frozen values. ``seed`` is the abstract seed on
    ``(lambda_observed, bmatrix)`` when that pair is compatible.
    """

    algebra: WeylAlgebra
    frame: list
    lambda_observed: list
    lambda_block: list
    delta: list
    bmatrix_block: list
    block_compatible: bool
    bmatrix: list | None
    frozen_units: tuple | None
    exchange_units: dict
    compatible: bool
    d: tuple | None
    seed: Seed | None
    notes: list = field(default_factory=list)


def weyl_seed(algebra: WeylAlgebra) -> WeylSeedReport:
    """Build the initial seed, reading the form and exchange matrix off the actual relations."""
    n, ell = algebra.n, algebra.ell
    frame = algebra.frame()
    observed = observed_form(frame, ell)
    block = block_form(n, algebra.q)
    notes = []
    delta = []
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            if observed[i][j] is None:
                notes.append(f"frame values {i} and {j} do not quasi-commute")
            elif (observed[i][j] - block[i][j]) % ell:
                delta.append((i, j, observed[i][j], block[i][j] % ell))
    from_block = [[0] * n for _ in range(n)] + exchange_block(n)
    report = WeylSeedReport(algebra, frame, observed, block, delta, from_block, False, None, None, {}, False, None, None, notes)
    if notes:
        return report
    half = ell // 2
    form = SkewForm.from_integer(ell, [[(x - ell if x > half else x) for x in row] for row in observed])
    try:
        check_compatible(form, ExchangeMatrix(2 * n, tuple(range(n)), from_block))
        report.block_compatible = True
    except (NotEllCompatible, NotSkewSymmetrizable) as exc:
        notes.append(f"block exchange matrix is not compatible with the observed form: {exc}")
    found = _search_exchange(algebra, frame, observed, from_block)
    if found is None:
        notes.append("no exchange matrix with entries in {-1, 0, 1} is realised by the relations")
        return report
    report.frozen_units, report.bmatrix, report.exchange_units = found
    if report.bmatrix != from_block:
        notes.append("realised exchange matrix differs from the block one")
    bmat = ExchangeMatrix(2 * n, tuple(range(n)), report.bmatrix)
    try:
        report.d = check_compatible(form, bmat)
        report.compatible = True
        report.seed = Seed.initial(form, bmat, report.d)
    except (NotEllCompatible, NotSkewSymmetrizable) as exc:
        notes.append(f"realised exchange matrix is not compatible with the observed form: {exc}")
    return report


def _units(ell: int):
    return [(sign, k) for sign in (1, -1) for k in range(ell)]


def _apply_unit(elem: WeylElement, unit) -> WeylElement:
    sign, k = unit
    out = elem.mul_zeta(k)
    return out if sign == 1 else -out


def _search_exchange(algebra: WeylAlgebra, frame: list, lam: list, block: list):
    """Find frozen rescalings and columns for which ``F_k * (u w_k)`` is the exchange binomial in every direction.

    Columns are supported on frozen rows with entries in {-1, 0, 1}; the
    block column is tried first in each direction.
    """
    n, ell = algebra.n, algebra.ell
    size = 2 * n
    pair = lambda f, g: sum(f[i] * lam[i][j] * g[j] for i in range(size) for j in range(size))
    columns = [c for c in product((0, 1, -1), repeat=n) if any(c)]
    base = [frame[k] * algebra.w(k) for k in range(n)]
    for units in product(_units(ell), repeat=n):
        scaled = frame[:n] + [_apply_unit(frame[n + i], units[i]) for i in range(n)]
        chosen, found_units = [], {}
        for k in range(n):
            first = tuple(block[n + i][k] for i in range(n))
            hit = None
            for col in [first] + [c for c in columns if c != first]:
                full = [0] * n + list(col)
                plus = [max(x, 0) for x in full]
                minus = [-min(x, 0) for x in full]
                ek = [int(i == k) for i in range(size)]
                rhs = weyl_frame_monomial(scaled, lam, plus).mul_zeta(pair(ek, plus)) + weyl_frame_monomial(
                    scaled, lam, minus
                ).mul_zeta(pair(ek, minus))
                for unit in _units(ell):
                    if _apply_unit(base[k], unit) == rhs:
                        hit = (col, unit)
                        break
                if hit:
                    break
            if hit is None:
                break
            chosen.append(hit[0])
            found_units[k] = hit[1]
        else:
            bmatrix = [[0] * n for _ in range(n)] + [[chosen[k][i] for k in range(n)] for i in range(n)]
            return tuple(units), bmatrix, found_units
    return None


# -- discriminant -------------------------------------------------------------


def weyl_presentation(algebra: WeylAlgebra) -> FreeModulePresentation:
    """Basis ``x^a w^b`` with ``a, b`` in ``[0, l)^n`` over ``Z[zeta][x_i^l, w_i^l]``.

    Central coefficients live in a commutative torus with one coordinate per
    ``x_i^l`` and ``w_i^l``.
    """
    n, ell = algebra.n, algebra.ell
    central = SkewForm.zero(ell, 2 * n)
    vecs = residue_vectors(ell, 2 * n)
    basis = [algebra.monomial(v[:n], v[n:]) for v in vecs]
    where = {v: m for m, v in enumerate(vecs)}

    def decompose(y: WeylElement) -> list:
        coeffs = [{} for _ in basis]
        for mono, c in y.terms.items():
            r = tuple(x % ell for x in mono)
            f = tuple(x // ell for x in mono)
            coeffs[where[r]][f] = c
        return [TorusElement(central, t) for t in coeffs]

    factors = []
    for i in range(n):
        power = algebra.central_z(i) ** ell
        parts = decompose(power)
        if any(not p.is_zero() for p in parts[1:]):
            raise ArithmeticError(f"z{i + 1}^l is not a polynomial in the l-th powers of the generators")
        factors.append(FrozenFactor(f"z{i + 1}", parts[0]))
    return FreeModulePresentation(
        basis, algebra.multiply, decompose, central, 2 * n, factors, tuple(range(2 * n)), f"weyl n={n} l={ell}"
    )


@dataclass
class WeylDiscriminantReport:
    """Discriminant over ``Z[zeta][x_i^l, w_i^l]`` checked against the closed form ``l^(2n l^(2n)) prod z_i^(e)``.

    ``exponent`` is the claimed total power ``(l - 1) l^n`` of each ``z_i``;
    ``observed_exponents`` are the total powers actually found by factoring.
    """

    result: DiscriminantResult
    exponent: int
    expected: TorusElement
    verdict: bool
    observed_exponents: dict
    reason: str = ""


def weyl_discriminant(algebra: WeylAlgebra) -> WeylDiscriminantReport:
    if algebra.ell % 2 == 0 or algebra.ell < 3:
        raise ValueError("the discriminant statement needs odd l > 1")
    presentation = weyl_presentation(algebra)
    result = cluster_discriminant(presentation)
    ell, n = algebra.ell, algebra.n
    exponent = predicted_weyl_exponent(n, ell)
    expected = TorusElement.constant(presentation.central_form, scalar_power(ell, 2 * n))
    for factor in presentation.frozen:
        expected = expected * factor.power ** (exponent // ell)
    verdict = compare_up_to_unit(result.discriminant, expected)
    observed = result.total_exponents(ell)
    reason = verdict.reason
    if not verdict.ok and result.verdict:
        reason = f"found total z-exponents {observed}, closed form uses {exponent}"
    return WeylDiscriminantReport(result, exponent, expected, verdict.ok, observed, reason)


def predicted_weyl_exponent(n: int, ell: int) -> int:
    """Claimed total exponent of each ``z_i``: ``(l - 1) l^n``."""
    return (ell - 1) * ell ** n
