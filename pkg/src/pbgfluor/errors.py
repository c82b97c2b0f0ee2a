"""Shared exception types."""

from __future__ import annotations


class UnsupportedModelError(ValueError):
    """Operation is not defined for the requested reservoir model."""


class ConditioningError(RuntimeError):
    """A response denominator is too close to singular to trust.

    Carries the offending value, when there is a single one, so callers
    can report it.
    """

    def __init__(self, message: str, value: complex | None = None):
        super().__init__(message)
        self.value = value
