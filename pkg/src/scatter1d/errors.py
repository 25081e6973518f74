"""Exception hierarchy shared across the package."""


class Scatter1dError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(Scatter1dError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class AccuracyError(Scatter1dError):
    """A requested tolerance cannot be met at the given arguments."""


class ConvergenceError(Scatter1dError):
    """An iterative procedure failed to converge."""


class NoSolutionError(Scatter1dError):
    """A well-posed query provably has no solution (parity guards, Hurwitz bands, ...)."""


class DegenerateDenominatorError(Scatter1dError):
    """A formula's excluded case was hit (denominator within roundoff of zero)."""


class NearZeroError(Scatter1dError):
    """An integration path passed too close to a zero of a divisor."""

    def __init__(self, message: str, location: float | None = None):
        super().__init__(message)
        self.location = location


class SpectralSingularityError(Scatter1dError):
    """Signal that the configuration sits on (or within eps of) a pole of T.

    Carries the offending modulus so sweep drivers can log and continue.
    """

    def __init__(self, message: str, magnitude: float):
        super().__init__(message)
        self.magnitude = magnitude
