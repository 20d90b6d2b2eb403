# polytransform/errors.py

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .induction import TransversalReport


class PolyTransformError(Exception):
    """Base class for every error raised by the polytransform library."""
    pass


class MalformedSpecError(PolyTransformError, ValueError):
    """Inputs whose sizes or contents cannot describe a valid transform."""
    pass


class UnknownTransformError(PolyTransformError, ValueError):
    pass


class DimensionMismatchError(PolyTransformError, ValueError):
    """A vector or operator does not have the dimensions the operation needs."""
    pass


class TransversalError(PolyTransformError):
    """
    Raised when an induction is requested for polynomials that do not form a
    transversal. The diagnostics of the failed check travel with the error.
    """

    def __init__(self, message: str, report: "TransversalReport"):
        super().__init__(message)
        self.report = report


class DecompositionError(PolyTransformError):
    """The sample points do not split into equal fibers of p(x) = q(r(x))."""
    pass


class PlanError(PolyTransformError, ValueError):
    pass


class SpecParseError(PolyTransformError):
    """A spec file could not be parsed. `line_number` is 1-based."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
        self.detail = message


class MatrixFormatError(PolyTransformError, ValueError):
    pass
