"""Exception hierarchy shared by the library and the CLI."""


class KTheoryError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(KTheoryError, ValueError):
    """A matrix has the wrong shape for the requested operation."""


class DomainError(KTheoryError, ValueError):
    """An argument lies outside the domain of an operation (degree, subset, ...)."""


class SingularMatrixError(KTheoryError, ValueError):
    """The operation needs a nonzero determinant."""


class NotADilationError(KTheoryError):
    """The input is not an integer dilation matrix.

    The rejecting :class:`~dilation_ktheory.spectral.DilationReport` is kept
    on ``report`` so callers can show why.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(f"not an integer dilation matrix: {report.rejection_reason}")


class InternalConsistencyError(KTheoryError, AssertionError):
    """An identity that holds by construction failed to verify."""


class ParseError(KTheoryError, ValueError):
    """Input text could not be turned into a square integer matrix."""
