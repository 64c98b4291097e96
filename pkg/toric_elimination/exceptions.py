"""
Errors raised by the elimination pipeline.

Plain precondition violations (non-square matrices, non-prime moduli, wrong
polytope counts) raise the built-in ``ValueError``; the classes below mark
outcomes the caller may want to tell apart.
"""


class EliminationError(Exception):
    """Base class of every error raised by ``toric_elimination``."""


class SystemParseError(EliminationError, ValueError):
    """A system source does not follow the polynomial grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SegmentConditionError(EliminationError, ValueError):
    pass


class SubdivisionError(EliminationError):
    """The lifted subdivision is not fine; another lifting must be tried."""


class InterpolationError(EliminationError, ArithmeticError):
    """A declared degree cap was violated or a coefficient was not integral."""


class PerturbationError(EliminationError):
    """No perturbation system kept the resultant matrix nonsingular."""


class InfiniteRootSetError(EliminationError):
    pass


class BudgetExceededError(EliminationError):
    pass


class InvariantViolation(EliminationError, AssertionError):
    """A proven bound or an internal contract failed to hold."""
