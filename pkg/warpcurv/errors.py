"""
Errors Module

Exception hierarchy shared by every warpcurv module.

Each error also derives from the closest builtin so callers that only know
ValueError / RuntimeError still catch it.
"""

from typing import Any, Optional


class WarpcurvError(Exception):
    """Base class for all warpcurv errors."""

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: dict[str, Any] = dict(details or {})


class ArgumentError(WarpcurvError, ValueError):
    """An argument is outside its documented range."""


class NumericalFailure(WarpcurvError, RuntimeError):
    """A numerical routine did not converge or produced non-finite values."""


class DegenerateMetricError(NumericalFailure):
    """A first fundamental form is not positive definite."""


class ImmersionDegeneracyError(NumericalFailure):
    """The tangent basis of an immersion is rank deficient."""


class ChartError(WarpcurvError, ValueError):
    """A parameter point lies outside the chart of its family."""


class UnsupportedFamilyError(WarpcurvError, ValueError):
    """The operation is not defined for this family (or this fiber)."""


class UnsupportedCheckError(WarpcurvError, ValueError):
    """The requested check is not available under the current flags."""


class HypothesisViolation(WarpcurvError):
    """A hypothesis of the checked statement fails on the sampled surface."""


class ConfigError(WarpcurvError, ValueError):
    """The run configuration could not be parsed or validated."""

    def __init__(self, message: str, paths: Optional[list[str]] = None):
        super().__init__(message, {"paths": list(paths or [])})
        self.paths: list[str] = list(paths or [])
