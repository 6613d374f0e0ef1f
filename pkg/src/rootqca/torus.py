"""Quantum tori over Z[zeta]: Laurent polynomials with the twisted product

    X^f * X^g = zeta^{lam(f, g)} X^{f+g}

for a skew-symmetric integer form ``lam`` read modulo ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CyclotomicInteger, RootContext, root_context
from .errors import DivisionNotExact, NotExactlyDivisible


class SkewForm:
    """A skew-symmetric form on Z^N reduced modulo ``ell``.

    ``lift`` optionally keeps an integer skew-symmetric matrix reducing to
    ``entries``; it is carried through mutation when present.
    """

    __slots__ = ("ell", "n", "entries", "lift", "ctx", "_hash")

    def __init__(self, ell: int, matrix, lift=None):
        rows = [list(r) for r in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("form matrix must be square")
        entries = tuple(tuple(int(x) % ell for x in r) for r in rows)
        for i in range(n):
            for j in range(n):
                if (entries[i][j] + entries[j][i]) % ell:
                    raise ValueError(f"form is not skew-symmetric mod {ell} at ({i}, {j})")
        if lift is not None:
            lift = tuple(tuple(int(x) for x in r) for r in lift)
            for i in range(n):
                for j in range(n):
                    if lift[i][j] != -lift[j][i]:
                        raise ValueError(f"integer lift is not skew-symmetric at ({i}, {j})")
                    if (lift[i][j] - entries[i][j]) % ell:
                        raise ValueError(f"integer lift does not reduce to the form at ({i}, {j})")
        self.ell = ell
        self.n = n
        self.entries = entries
        self.lift = lift
        self.ctx = root_context(ell)
        self._hash = hash((ell, entries))

    @classmethod
    def from_integer(cls, ell: int, matrix) -> "SkewForm":
        """Reduce an integer skew-symmetric matrix and keep it as the lift."""
        return cls(ell, matrix, lift=matrix)

    @classmethod
    def zero(cls, ell: int, n: int) -> "SkewForm":
        return cls(ell, [[0] * n for _ in range(n)], lift=[[0] * n for _ in range(n)])

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.ell == other.ell and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SkewForm(ell={self.ell}, {[list(r) for r in self.entries]})"

    def row(self, f) -> tuple:
        """The covector ``g -> lam(f, g)`` as a tuple."""
        n, lam = self.n, self.entries
        return tuple(sum(f[i] * lam[i][j] for i in range(n) if f[i]) for j in range(n))

    def pair(self, f, g) -> int:
        return sum(a * b for a, b in zip(self.row(f), g)) % self.ell

    def in_kernel(self, f) -> bool:
        return all(x % self.ell == 0 for x in self.row(f))

    def centered(self) -> list[list[int]]:
        """Integer representatives in ``(-l/2, l/2]``, or the lift if one is stored."""
        if self.lift is not None:
            return [list(r) for r in self.lift]
        half = self.ell // 2
        return [[x - self.ell if x > half else x for x in r] for r in self.entries]


def term_key(f) -> tuple:
    """Degree-lex key; translation invariant, so leading terms multiply."""
    return (sum(f), tuple(f))


@dataclass(frozen=True)
class DivisionBudget:
    """Iteration and growth bounds for left division in a torus."""

    safety: int = 4
    growth: int = 64


DEFAULT_BUDGET = DivisionBudget()


class TorusElement:
    """An element of the quantum torus attached to a :class:`SkewForm`.

    ``terms`` maps exponent tuples to coefficient tuples (see
    :class:`~rootqca.cyclotomic.RootContext`). Zero coefficients are never stored.
    """

    __slots__ = ("form", "terms", "_hash")

    def __init__(self, form: SkewForm, terms=None):
        self.form = form
        self.terms = {} if terms is None else terms
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def monomial(cls, form: SkewForm, exp, coef=1) -> "TorusElement":
        ctx = form.ctx
        c = _as_coeffs(ctx, coef)
        exp = tuple(int(x) for x in exp)
        if len(exp) != form.n:
            raise ValueError(f"exponent {exp} has wrong length for rank {form.n}")
        return cls(form, {exp: c} if any(c) else {})

    @classmethod
    def generator(cls, form: SkewForm, i: int) -> "TorusElement":
        exp = [0] * form.n
        exp[i] = 1
        return cls.monomial(form, exp)

    @classmethod
    def constant(cls, form: SkewForm, coef=1) -> "TorusElement":
        return cls.monomial(form, (0,) * form.n, coef)

    @classmethod
    def from_terms(cls, form: SkewForm, pairs) -> "TorusElement":
        ctx = form.ctx
        acc: dict = {}
        for exp, coef in pairs:
            exp = tuple(exp)
            c = _as_coeffs(ctx, coef)
            acc[exp] = ctx.add(acc[exp], c) if exp in acc else c
        return cls(form, {e: c for e, c in acc.items() if any(c)})

    # -- basic protocol -----------------------------------------------------

    @property
    def ctx(self) -> RootContext:
        return self.form.ctx

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other):
        if isinstance(other, int):
            return self == TorusElement.constant(self.form, other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.form, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]), reverse=descending)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero element has no leading term")
        exp = max(self.terms, key=term_key)
        return exp, self.terms[exp]

    def coefficient(self, exp) -> CyclotomicInteger:
        return CyclotomicInteger(self.ctx, self.terms.get(tuple(exp), self.ctx.zero))

    def support(self):
        return list(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "TorusElement"):
        if self.form != other.form:
            raise ValueError("torus elements live over different forms")

    def _lift(self, other):
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, (int, CyclotomicInteger)):
            return TorusElement.constant(self.form, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = ctx.add(out[e], c)
                if any(s):
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return TorusElement(self.form, out)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return TorusElement(self.form, {e: ctx.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, coef) -> "TorusElement":
        ctx = self.ctx
        c = _as_coeffs(ctx, coef)
        if not any(c):
            return TorusElement(self.form)
        out = {}
        for e, x in self.terms.items():
            y = ctx.mul(x, c)
            if any(y):
                out[e] = y
        return TorusElement(self.form, out)

    def mul_zeta(self, k: int) -> "TorusElement":
        ctx = self.ctx
        if k % ctx.ell == 0:
            return self
        return TorusElement(self.form, {e: ctx.mul_zeta(c, k) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, CyclotomicInteger)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        return _multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, CyclotomicInteger)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have inverses in the torus")
            (exp, c), = self.terms.items()
            inv = self.ctx.divide(self.ctx.one, c)
            return TorusElement.monomial(self.form, tuple(-x for x in exp), inv) ** (-k)
        if self.is_monomial():
            # lam(f, f) = 0, so powers of monomials carry no twist.
            (exp, c), = self.terms.items()
            return TorusElement(self.form, {tuple(k * x for x in exp): self.ctx.power(c, k)})
        result = TorusElement.constant(self.form, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def commutes_with(self, other: "TorusElement") -> bool:
        return self * other == other * self

    # -- text and JSON ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for exp, c in self.sorted_terms():
            parts.append(f"({ctx.render(c)})*X^[{','.join(map(str, exp))}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusElement({self})"

    def to_json(self) -> list:
        return [{"exp": list(e), "coef": list(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, form: SkewForm, data) -> "TorusElement":
        pairs = []
        for item in data:
            exp = tuple(int(x) for x in item["exp"])
            if len(exp) != form.n:
                raise ValueError(f"exponent {exp} has wrong length for rank {form.n}")
            coef = item["coef"]
            if isinstance(coef, str):
                coef = form.ctx.parse(coef)
            elif isinstance(coef, int):
                coef = form.ctx.from_int(coef)
            else:
                coef = form.ctx.reduce([int(x) for x in coef])
            pairs.append((exp, coef))
        return cls.from_terms(form, pairs)


def _as_coeffs(ctx: RootContext, coef) -> tuple:
    if isinstance(coef, CyclotomicInteger):
        if coef.ctx.ell != ctx.ell:
            raise ValueError("coefficient ring does not match the torus")
        return coef.coeffs
    if isinstance(coef, int):
        return ctx.from_int(coef)
    coef = tuple(coef)
    return coef if len(coef) == ctx.degree else ctx.reduce(coef)


def _multiply(a: TorusElement, b: TorusElement) -> TorusElement:
    form = a.form
    ctx = form.ctx
    ell, deg = ctx.ell, ctx.degree
    if ell == 1:
        out: dict = {}
        for f, (c,) in a.terms.items():
            for g, (d,) in b.terms.items():
                h = tuple(x + y for x, y in zip(f, g))
                out[h] = out.get(h, 0) + c * d
        return TorusElement(form, {h: (v,) for h, v in out.items() if v})
    acc: dict = {}
    bterms = list(b.terms.items())
    for f, c in a.terms.items():
        row = form.row(f)
        cnz = [(i, x) for i, x in enumerate(c) if x]
        for g, d in bterms:
            t = sum(x * y for x, y in zip(row, g))
            h = tuple(x + y for x, y in zip(f, g))
            buf = acc.get(h)
            if buf is None:
                buf = acc[h] = [0] * ell
            for i, x in cnz:
                base = i + t
                for j, y in enumerate(d):
                    if y:
                        buf[(base + j) % ell] += x * y
    out = {}
    for h, buf in acc.items():
        r = ctx.reduce(buf) if deg != ell else tuple(buf)
        if any(r):
            out[h] = r
    return TorusElement(form, out)


def exact_left_divide(num: TorusElement, div: TorusElement, budget: DivisionBudget = DEFAULT_BUDGET) -> TorusElement:
    """Return ``q`` with ``div * q == num`` or raise :class:`NotExactlyDivisible`.

    Repeatedly cancels the leading term of the remainder. Since the term order
    is a translation-invariant total order, an exact quotient is found term by
    term from the top; the budget bounds the work when no quotient exists.
    """
    num._check(div)
    if div.is_zero():
        raise ZeroDivisionError("division by the zero torus element")
    form = num.form
    ctx = form.ctx
    g, d = div.leading_term()
    if div.is_monomial():
        out = {}
        row_g = form.row(g)
        for h, c in num.terms.items():
            f = tuple(x - y for x, y in zip(h, g))
            t = sum(x * y for x, y in zip(row_g, f))
            try:
                out[f] = ctx.mul_zeta(ctx.divide(c, d), -t)
            except DivisionNotExact as exc:
                raise NotExactlyDivisible(f"coefficient at {h} is not divisible") from exc
        return TorusElement(form, out)
    row_g = form.row(g)
    limit = len(num) * (1 + len(div)) * budget.safety
    grow = budget.growth * max(len(num), 1)
    quotient: dict = {}
    rem = TorusElement(form, dict(num.terms))
    steps = 0
    while rem.terms:
        steps += 1
        if steps > limit:
            raise NotExactlyDivisible(f"no quotient within {limit} steps")
        h, c = rem.leading_term()
        f = tuple(x - y for x, y in zip(h, g))
        t = sum(x * y for x, y in zip(row_g, f))
        try:
            coef = ctx.mul_zeta(ctx.divide(c, d), -t)
        except DivisionNotExact as exc:
            raise NotExactlyDivisible(f"leading coefficient at {h} is not divisible") from exc
        quotient[f] = coef
        rem = rem - div * TorusElement(form, {f: coef})
        if len(rem) > grow:
            raise NotExactlyDivisible("remainder grew past the growth bound")
    return TorusElement(form, quotient)


def is_central_support(a: TorusElement) -> bool:
    """True iff every exponent of ``a`` pairs to zero mod l with the whole lattice."""
    return all(a.form.in_kernel(f) for f in a.terms)


def in_mixed_torus(a: TorusElement, free_directions) -> bool:
    """True iff exponents are non-negative outside ``free_directions``."""
    free = set(free_directions)
    return all(x >= 0 for f in a.terms for i, x in enumerate(f) if i not in free)
