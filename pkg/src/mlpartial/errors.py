"""Exception types raised by mlpartial."""

from __future__ import annotations


class MLPartialError(Exception):
    """Base class for all package errors."""


class DomainError(MLPartialError, ValueError):
    """An argument lies outside the domain of the operation."""


class TruncationError(MLPartialError, RuntimeError):
    """No truncation index below the hard cap certifies the series tail."""


class SingularDenominatorError(MLPartialError, ZeroDivisionError):
    """A ratio or witness denominator fell below the guard threshold."""


class HypothesisError(MLPartialError, ValueError):
    """Parameters violate the hypothesis of a bound.

    ``threshold`` holds the minimal admissible value of the offending
    parameter when there is one.
    """

    def __init__(self, message: str, threshold: float | None = None) -> None:
        super().__init__(message)
        self.threshold = threshold


class PreconditionError(MLPartialError, RuntimeError):
    """A verification precondition (denominator certificate) failed."""
