"""Exact arithmetic in the cyclotomic integers Z[zeta] for a primitive l-th root of unity.

Elements are stored as integer coefficient tuples in the power basis
``1, z, ..., z^(phi(l)-1)``, reduced modulo the l-th cyclotomic polynomial.
The low-level helpers on :class:`RootContext` operate on plain tuples so the
torus code can avoid allocating wrapper objects in its inner loops; the
coefficient type only needs ``+``, ``-`` and ``*``, so the same helpers work
over ``fractions.Fraction`` when a field element is needed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionNotExact


def _poly_divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low-to-high coefficients) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for shift in range(len(num) - 1 - dd, -1, -1):
        c = num[shift + dd]
        quot[shift] = c
        if c:
            for i, b in enumerate(den):
                num[shift + i] -= c * b
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the ``ell``-th cyclotomic polynomial.

    Computed by dividing ``t^ell - 1`` by the cyclotomic polynomials of all
    proper divisors of ``ell``.
    """
    if ell < 1:
        raise ValueError(f"order must be a positive integer, got {ell}")
    poly = [-1] + [0] * (ell - 1) + [1]
    for d in range(1, ell):
        if ell % d == 0:
            poly, rem = _poly_divmod_monic(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError("cyclotomic recursion left a remainder")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class RootContext:
    """Shared data for arithmetic in Z[zeta_l]: the modulus and a unit table."""

    def __init__(self, ell: int):
        if not isinstance(ell, int) or ell < 1:
            raise ValueError(f"order must be a positive integer, got {ell!r}")
        self.ell = ell
        self.phi = cyclotomic_polynomial(ell)
        self.degree = len(self.phi) - 1
        self.galois = tuple(k for k in range(1, ell + 1) if gcd(k, ell) == 1 and k <= max(ell - 1, 1))
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        self._zeta = tuple(self.reduce([0] * k + [1]) for k in range(ell))
        units = {}
        for k in range(ell - 1, -1, -1):
            units[self._zeta[k]] = (1, k)
            units[self.neg(self._zeta[k])] = (-1, k)
        self._units = units

    def __repr__(self) -> str:
        return f"RootContext({self.ell})"

    # -- tuple-level helpers -------------------------------------------------

    def reduce(self, vec) -> tuple:
        """Reduce a coefficient list of any length modulo z^l - 1 and the cyclotomic polynomial."""
        ell, deg, phi = self.ell, self.degree, self.phi
        buf = [0] * ell
        for i, c in enumerate(vec):
            if c:
                buf[i % ell] += c
        for k in range(ell - 1, deg - 1, -1):
            c = buf[k]
            if c:
                base = k - deg
                for j in range(deg):
                    p = phi[j]
                    if p:
                        buf[base + j] -= c * p
                buf[k] = 0
        return tuple(buf[:deg])

    def from_int(self, n) -> tuple:
        return (n,) + (0,) * (self.degree - 1)

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a) -> tuple:
        return tuple(-x for x in a)

    def scale(self, a, n) -> tuple:
        return tuple(n * x for x in a)

    def is_zero(self, a) -> bool:
        return not any(a)

    def mul(self, a, b, shift: int = 0) -> tuple:
        """Product ``a * b * zeta^shift``."""
        ell = self.ell
        if self.degree == 1 and ell <= 2:
            v = a[0] * b[0]
            return (-v,) if (ell == 2 and shift % 2) else (v,)
        buf = [0] * ell
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        buf[(i + j + shift) % ell] += x * y
        return self.reduce(buf)

    def mul_zeta(self, a, k: int) -> tuple:
        """Multiply by ``zeta^k``."""
        k %= self.ell
        if k == 0:
            return tuple(a)
        buf = [0] * self.ell
        for i, x in enumerate(a):
            if x:
                buf[(i + k) % self.ell] += x
        return self.reduce(buf)

    def zeta(self, k: int) -> tuple:
        return self._zeta[k % self.ell]

    def power(self, a, n: int) -> tuple:
        if n < 0:
            return self.power(self.divide(self.one, a), -n)
        result, base = self.one, tuple(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def conjugate(self, a, k: int) -> tuple:
        """Galois image under ``zeta -> zeta^k``."""
        buf = [0] * self.ell
        for i, x in enumerate(a):
            if x:
                buf[(i * k) % self.ell] += x
        return self.reduce(buf)

    def adjugate(self, a) -> tuple:
        """Product of the non-trivial Galois conjugates, so ``a * adjugate(a) = norm(a)``."""
        out = self.one
        for k in self.galois:
            if k != 1:
                out = self.mul(out, self.conjugate(a, k))
        return out

    def norm(self, a):
        """Field norm; equals the resultant of the representative with the (monic) modulus."""
        prod = self.mul(a, self.adjugate(a))
        if any(prod[1:]):
            raise ArithmeticError("norm computation did not land in the base ring")
        return prod[0]

    def unit_index(self, a):
        """Return ``(sign, k)`` if ``a == sign * zeta^k``, else ``None``."""
        return self._units.get(tuple(a))

    def divide(self, a, b) -> tuple:
        """Exact quotient ``a / b``; raises :class:`DivisionNotExact` if it is not integral."""
        if not any(b):
            raise ZeroDivisionError("division by zero in Z[zeta]")
        u = self._units.get(tuple(b))
        if u is not None:
            sign, k = u
            q = self.mul_zeta(a, -k)
            return q if sign == 1 else self.neg(q)
        n = self.norm(b)
        num = self.mul(a, self.adjugate(b))
        if isinstance(n, int) and all(isinstance(x, int) for x in num):
            if any(x % n for x in num):
                raise DivisionNotExact("quotient is not a cyclotomic integer")
            return tuple(x // n for x in num)
        return tuple(Fraction(x) / n for x in num)

    def try_divide(self, a, b):
        try:
            return self.divide(a, b)
        except DivisionNotExact:
            return None

    # -- text ---------------------------------------------------------------

    def render(self, a) -> str:
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                mono, coef = "", str(abs(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, coef + mono))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(r"^(\d+)?(?:\*?(z)(?:\^(\d+))?)?$")

    def parse(self, text: str) -> tuple:
        """Inverse of :meth:`render`; accepts any power of ``z`` and reduces it."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty cyclotomic literal")
        if s[0] not in "+-":
            s = "+" + s
        tokens = re.findall(r"[+-][^+-]+", s)
        if "".join(tokens) != s:
            raise ValueError(f"cannot parse cyclotomic literal {text!r}")
        buf = [0]
        for tok in tokens:
            sign = -1 if tok[0] == "-" else 1
            m = self._TERM.match(tok[1:])
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse term {tok!r} in {text!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            power = 0 if m.group(2) is None else int(m.group(3) or 1)
            if power >= len(buf):
                buf.extend([0] * (power + 1 - len(buf)))
            buf[power] += sign * coef
        return self.reduce(buf)


@lru_cache(maxsize=None)
def root_context(ell: int) -> RootContext:
    return RootContext(ell)


class CyclotomicInteger:
    """An immutable element of Z[zeta_l]."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: RootContext | int, coeffs=None):
        if isinstance(ctx, int):
            ctx = root_context(ctx)
        self.ctx = ctx
        if coeffs is None:
            coeffs = ctx.zero
        elif isinstance(coeffs, int):
            coeffs = ctx.from_int(coeffs)
        else:
            coeffs = tuple(coeffs)
            if len(coeffs) != ctx.degree:
                coeffs = ctx.reduce(coeffs)
        self.coeffs = coeffs

    @classmethod
    def parse(cls, text: str, ell: int) -> "CyclotomicInteger":
        ctx = root_context(ell)
        return cls(ctx, ctx.parse(text))

    def _coerce(self, other):
        if isinstance(other, CyclotomicInteger):
            if other.ctx.ell != self.ctx.ell:
                raise ValueError(f"cannot mix Z[zeta_{self.ctx.ell}] and Z[zeta_{other.ctx.ell}]")
            return other.coeffs
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else CyclotomicInteger(self.ctx, self.ctx.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else CyclotomicInteger(self.ctx, self.ctx.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else CyclotomicInteger(self.ctx, self.ctx.sub(o, self.coeffs))

    def __neg__(self):
        return CyclotomicInteger(self.ctx, self.ctx.neg(self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else CyclotomicInteger(self.ctx, self.ctx.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return CyclotomicInteger(self.ctx, self.ctx.power(self.coeffs, n))

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else CyclotomicInteger(self.ctx, self.ctx.divide(self.coeffs, o))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.ctx.from_int(other)
        if isinstance(other, CyclotomicInteger):
            return self.ctx.ell == other.ctx.ell and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.ell, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return self.ctx.render(self.coeffs)

    def __repr__(self):
        return f"CyclotomicInteger({self.ctx.ell}, {str(self)!r})"

    def conjugate(self, k: int) -> "CyclotomicInteger":
        return CyclotomicInteger(self.ctx, self.ctx.conjugate(self.coeffs, k))

    def norm(self) -> int:
        return self.ctx.norm(self.coeffs)

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1


def zeta_pow(ell: int, k: int) -> CyclotomicInteger:
    """``zeta_l^k`` for any integer ``k``."""
    ctx = root_context(ell)
    return CyclotomicInteger(ctx, ctx.zeta(k))


def field_norm(a: CyclotomicInteger) -> int:
    return a.norm()


def is_unit(a: CyclotomicInteger) -> bool:
    return a.is_unit()
