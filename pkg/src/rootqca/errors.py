"""Exception types shared across the package."""

from __future__ import annotations


class DivisionNotExact(ArithmeticError):
    """A quotient in Z[zeta] is not integral."""


class NotExactlyDivisible(ArithmeticError):
    """Left division in a quantum torus did not terminate with zero remainder."""


class NegativePowerOfPolynomialVariable(ArithmeticError):
    """A frame monomial asked for a negative power of a non-monomial variable."""


class NotSkewSymmetrizable(ValueError):
    """The principal part of an exchange matrix has no positive skew-symmetrizer."""


class NotEllCompatible(ValueError):
    """A (form, exchange matrix) pair violates the mod-l compatibility congruence."""

    def __init__(self, message: str, i: int | None = None, j: int | None = None):
        super().__init__(message)
        self.i = i
        self.j = j


class MutationInconsistent(ArithmeticError):
    """The two sign choices of the matrix mutation rule disagree."""


class CoprimeViolated(ValueError):
    """The order l is even or shares a factor with a skew-symmetrizer entry."""


class BudgetExceeded(RuntimeError):
    """A search hit its node or depth bound; the partial result is attached."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DecompositionFailed(ArithmeticError):
    """An element could not be written uniquely over the chosen central basis."""


class NerveInvalid(ValueError):
    """A seed collection is not connected by single mutations covering every direction."""


class NotReduced(ValueError):
    """A Weyl group word is not reduced."""


class NotInRootLattice(ValueError):
    """A weight has no integral expansion in simple roots."""


class CompatibilityFailed(ValueError):
    """Integer compatibility of unipotent seed data failed."""


class UnsupportedWord(ValueError):
    """No discriminant pipeline is implemented for the given reduced word."""
