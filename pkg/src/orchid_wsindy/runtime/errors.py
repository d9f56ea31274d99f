"""Custom exceptions for orchid-wsindy."""

from __future__ import annotations


class OrchidWsindyError(Exception):
    """Base exception for this package."""


class MissingDependencyError(OrchidWsindyError):
    """Raised when an optional dependency is required but not installed."""


class ArgumentError(OrchidWsindyError, ValueError):
    """Raised when an operation receives an argument outside its domain."""


class StateError(OrchidWsindyError, RuntimeError):
    """Raised when an operation is invoked in the wrong lifecycle state."""


class InvariantViolationError(OrchidWsindyError):
    """Raised when shapes or structural invariants of a stream object break."""


class NumericalError(OrchidWsindyError):
    """Base exception for numerical failures."""


class ReconstructionError(NumericalError):
    """Raised when the surrogate integrator fails or the trajectory blows up."""

    def __init__(self, time: float, reason: str) -> None:
        self.time = time
        self.reason = reason
        super().__init__(f"Surrogate integration failed at t={time:.6g}: {reason}")
