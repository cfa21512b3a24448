"""Exception hierarchy.

MathError covers failures of mathematical preconditions or certification
(CLI exit code 2); ParseError covers input syntax (exit code 1).
"""


class HKError(Exception):
    pass


class ParseError(HKError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)


class MathError(HKError):
    pass


class IndeterminateOrderError(MathError):
    """The order of a series is not determined by the known coefficients."""


class NotUnitError(MathError):
    pass


class NoRationalRootError(MathError):
    pass


class PrecisionError(MathError):
    """A computation needs more certified coefficients than are available."""


class InsufficientBoundError(PrecisionError):
    """A value set known up to a bound does not yet certify a conductor."""


class GcdError(MathError):
    """Observed valuations share a common divisor > 1 (extension not birational)."""


class NotMinimalError(MathError):
    pass


class HypothesisError(MathError):
    """A theorem's hypotheses are not satisfied by the given data."""


class ConsistencyError(MathError):
    """An internal cross-check that must hold mathematically has failed."""
