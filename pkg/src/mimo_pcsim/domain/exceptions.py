"""Exception hierarchy shared by every layer."""

from typing import Any


class PcsimError(Exception):
    """Base class for simulator errors."""


class ConfigurationError(PcsimError):
    """Invalid system configuration or experiment manifest."""


class DomainError(PcsimError, ValueError):
    """Input outside the physical domain (nonpositive distance, shape mismatch)."""


class DegenerateEstimateError(PcsimError):
    """A channel estimate has zero norm, so no MRT precoder exists."""

    def __init__(self, user: int) -> None:
        super().__init__(f"channel estimate of user {user} has zero norm")
        self.user = user


class SolverError(PcsimError):
    """A numerical solver could not produce a solution."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.diagnostics: dict[str, Any] = diagnostics or {}


class ConvergenceError(SolverError):
    """Iteration cap reached before the stopping rule held."""

    def __init__(
        self,
        message: str,
        trace: list[Any] | None = None,
        diagnostics: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, diagnostics)
        self.trace: list[Any] = trace or []


class CapacityError(PcsimError):
    """Exhaustive search would exceed its point budget."""


class UnknownScenarioError(PcsimError, KeyError):
    """Scenario id not present in the experiment catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown scenario"
