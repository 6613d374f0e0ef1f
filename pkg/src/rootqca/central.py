"""The central subalgebra generated by l-th powers of cluster variables."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CoprimeViolated
from .seeds import Seed, is_coprime
from .torus import SkewForm, TorusElement, exact_left_divide, is_central_support


@dataclass(frozen=True)
class CentralElement:
    """An l-th power together with where it came from and how it was certified."""

    value: TorusElement
    provenance: tuple
    kernel_support: bool
    commutes_with_frame: bool

    @property
    def certified(self) -> bool:
        return self.kernel_support and self.commutes_with_frame


def ell_power(seed: Seed, j: int, word: tuple = ()) -> CentralElement:
    """``M(e_j)^l`` with two independent centrality certificates."""
    value = seed.frame[j] ** seed.ell
    kernel = is_central_support(value)
    commutes = all(value.commutes_with(v) for v in seed.frame)
    return CentralElement(value, (tuple(word), j), kernel, commutes)


def full_center_membership(seed: Seed, element: TorusElement) -> bool:
    """Membership in the centre of the ambient torus (exponents in the kernel of the form mod l)."""
    return is_central_support(element)


@dataclass(frozen=True)
class ExchangeCheck:
    """Verdict of the l-th power exchange identity in one direction.

    ``residual`` is ``(x_k')^l - M(e_k)^{-l} * (P^l + Q^l)``, computed by an
    exact left division, so it vanishes exactly when the identity holds.
    """

    passed: bool
    residual: TorusElement
    lhs: TorusElement
    rhs: TorusElement


def exchange_identity_check(seed: Seed, k: int) -> ExchangeCheck:
    ell = seed.ell
    col = seed.bmat.column(k)
    mutated = seed.mutate(k).frame[k]
    lhs = seed.frame[k] ** ell * mutated ** ell
    one = TorusElement.constant(seed.torus_form, 1)
    pos, neg = one, one
    for i, b in enumerate(col):
        if b > 0:
            pos = pos * (seed.frame[i] ** ell) ** b
        elif b < 0:
            neg = neg * (seed.frame[i] ** ell) ** (-b)
    rhs = pos + neg
    residual = exact_left_divide(lhs - rhs, seed.frame[k] ** ell)
    return ExchangeCheck(residual.is_zero(), residual, lhs, rhs)


def classical_embedding(element: TorusElement, form: SkewForm) -> TorusElement:
    """Send a commutative Laurent polynomial ``sum c x^f`` to ``sum c X^{l f}`` in the torus of ``form``."""
    if element.form.ell != 1:
        raise ValueError("classical embedding expects an l = 1 element")
    ell = form.ell
    return TorusElement.from_terms(
        form, ((tuple(ell * x for x in f), form.ctx.from_int(c[0])) for f, c in element.terms.items())
    )


@dataclass(frozen=True)
class FrobeniusResult:
    passed: bool
    word: tuple
    failures: tuple


def frobenius_check(seed: Seed, word, power_cache: dict | None = None) -> FrobeniusResult:
    """Compare l-th powers of quantum cluster variables with images of classical ones along ``word``.

    ``power_cache`` may be shared between calls to avoid recomputing l-th powers.
    """
    if not is_coprime(seed.ell, seed.d):
        raise CoprimeViolated(f"l={seed.ell} with d={seed.d} violates the coprime hypothesis")
    from .exchange_graph import classical_seed

    word = tuple(word)
    quantum = seed.mutate_word(word)
    classical = classical_seed(seed).mutate_word(word)
    cache = {} if power_cache is None else power_cache
    failures = []
    for j in range(seed.n):
        q = quantum.frame[j]
        if q not in cache:
            cache[q] = q ** seed.ell
        if cache[q] != classical_embedding(classical.frame[j], seed.torus_form):
            failures.append(j)
    return FrobeniusResult(not failures, word, tuple(failures))

