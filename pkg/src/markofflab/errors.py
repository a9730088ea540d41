"""Exception types shared across the package."""


class MarkoffLabError(Exception):
    """Base class for all library errors."""


class OracleMismatch(MarkoffLabError):
    """The matrix-product and Cayley-Hamilton recurrences disagree.

    This signals a seed pair that violates the commutation condition
    x1*M1*x2 == x2*M2*x1, so no valid sequence extends it.
    """


class InvariantViolation(MarkoffLabError):
    """A generated or loaded term breaks determinant/symmetry invariants."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class UnknownFamily(MarkoffLabError):
    """Identity family id not present in the registry."""


class UnknownEstimate(MarkoffLabError):
    """Estimate id not present in the audit registry."""


class IndexOutOfRange(MarkoffLabError):
    """An operation referenced sequence indices that are not materialized."""


class PrecisionExhausted(MarkoffLabError):
    """Working precision too low for the requested decision."""


class ConsistencyFailure(MarkoffLabError):
    """Cross-index validation of heuristic enclosures failed."""


class RadiusTooLarge(MarkoffLabError):
    """Enclosure too wide for a nearest-integer decision."""


class DerivativeVanishes(MarkoffLabError):
    """Interval evaluation of the derivative contains zero."""


class NoConvergence(MarkoffLabError):
    """Newton refinement did not stabilize within the iteration budget."""


class DegreeTooHigh(MarkoffLabError):
    """Polynomial degree outside the supported range."""


class NotFound(MarkoffLabError):
    """Search completed without a qualifying result."""


class BudgetExceeded(MarkoffLabError):
    """Enumeration size exceeds the configured budget."""


class FormatError(MarkoffLabError):
    """Malformed cache or report file."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class IoError(MarkoffLabError):
    """Filesystem failure while reading or writing an artifact."""


class UsageError(MarkoffLabError):
    """Bad command-line arguments or configuration."""
