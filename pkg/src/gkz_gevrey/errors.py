"""Structured errors raised by the library.

Every error derives from :class:`GKZError`, which the CLI maps to exit code 1.
"""


class GKZError(ValueError):
    """Base class for domain errors."""

    code = "domain-error"


class NotFullRankError(GKZError):
    code = "not-full-rank"


class SingularSimplexError(GKZError):
    code = "not-a-simplex"


class NonGenericWeightError(GKZError):
    code = "non-generic-weight"

    def __init__(self, message, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class RetryBudgetError(GKZError):
    code = "retry-budget-exhausted"


class AssumptionError(GKZError):
    code = "assumptions-violated"


class EmptyClassError(GKZError):
    code = "class-empty"


class TooFewTermsError(GKZError):
    code = "too-few-terms"


class InvariantViolation(AssertionError):
    """An internal invariant failed; indicates a bug, never bad input."""


class InputError(GKZError):
    """Malformed or inconsistent problem input; names the offending field."""

    code = "input-error"
