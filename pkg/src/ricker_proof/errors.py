"""Exceptions and warnings raised across the proof pipeline."""

from __future__ import annotations


class RegimeError(ValueError):
    """A parameter interval lies outside the range an operation supports."""


class ConvergenceFailure(RuntimeError):
    """An iteration did not reach its tolerance within the allowed steps."""

    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class SliceTooWide(ValueError):
    """The parameter slice is not narrower than the attracting radius."""


class CertificationInconclusive(RuntimeError):
    """Adaptive bisection ran out of budget with some checks undecided."""

    def __init__(self, message: str, failures=(), certificate=None):
        super().__init__(message)
        self.failures = list(failures)
        self.certificate = certificate


class ResourceExceeded(RuntimeError):
    """A configured cell, edge or iteration cap was hit."""


class OverflowWidened(RuntimeWarning):
    """An exponential overflowed and an endpoint was saturated to +inf."""
