"""Exception hierarchy shared by all trideck modules."""


class TrideckError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TrideckError):
    """Invalid input: malformed sets, bad exponents, precondition violations."""


class BudgetError(TrideckError):
    """A computation was refused because it exceeds the configured budget."""


class ShapeMismatchError(DomainError):
    """Operands live on different moduli or have incompatible tensor shapes."""


class InvalidExponentsError(DomainError):
    """Exponent tuple violates the scaling relation 1 + k/r = sum(1/p_j)."""


class InconsistentBispectrumError(TrideckError):
    """Input tensor cannot be the bispectrum of a nonnegative real function."""
