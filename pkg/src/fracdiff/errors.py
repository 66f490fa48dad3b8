"""Exception types shared across the package."""


class FracdiffError(Exception):
    """Base class for all package-specific failures."""


class NonConvergent(FracdiffError):
    """A series did not meet its stopping criterion within the term budget.

    Callers should fall back to an integral representation.
    """


class OutOfWindow(FracdiffError):
    """Argument outside the validity window of a series representation."""


class QuadratureFailure(FracdiffError):
    """Adaptive quadrature hit its subdivision limit before the tolerance."""


class DomainError(FracdiffError, ValueError):
    """Input outside the mathematical domain of an operation."""


class UnsupportedOrder(FracdiffError, ValueError):
    """A fractional order outside the range an operation supports."""


class DegenerateInput(FracdiffError, ValueError):
    """Statistically degenerate input (e.g. a constant sample)."""
