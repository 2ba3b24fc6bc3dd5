"""Exception hierarchy for circumseq."""


class CircumseqError(Exception):
    """Base class for all circumseq errors."""


class DimensionMismatchError(CircumseqError):
    """Input points do not form a consistent (n, d) array."""


class InvalidArgumentError(CircumseqError, ValueError):
    """An argument is structurally invalid (wrong count, wrong range)."""


class DegenerateGeometryError(CircumseqError):
    """A point configuration violates the position requirements of an operation."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ConstraintViolationError(CircumseqError):
    """Parameters fall outside the admissible domain."""


class NumericalInstabilityError(CircumseqError):
    """A quantity that is positive in exact arithmetic lost its sign in floats."""


class InputFormatError(CircumseqError):
    """A points file could not be parsed."""
