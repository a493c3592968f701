"""Exception hierarchy shared by every package.

The CLI maps DomainError to a usage failure (exit 2) and every other
AnytimeCodingError to a numeric/capacity failure (exit 3).
"""

from typing import Any, Optional


class AnytimeCodingError(Exception):
    """Base class for all errors raised by this project."""


class DomainError(AnytimeCodingError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(AnytimeCodingError):
    """A horizon, depth or slot index exceeds a documented cap."""


class NumericError(AnytimeCodingError):
    """A numerical routine failed to reach its tolerance."""

    def __init__(self, message: str, diagnostics: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in sorted(self.diagnostics.items()))
        return f"{base} ({details})"


class InfiniteDivergenceError(NumericError):
    """A channel row puts mass where the zero-cost row has none."""


class InsufficientDataError(AnytimeCodingError):
    """Too few usable points to fit an exponent."""


class EmptyPlanError(AnytimeCodingError):
    """No channel input is affordable within the burst budget."""
