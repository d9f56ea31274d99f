"""Runtime primitives shared by every stage."""

from orchid_wsindy.runtime.errors import (
    ArgumentError,
    InvariantViolationError,
    MissingDependencyError,
    NumericalError,
    OrchidWsindyError,
    ReconstructionError,
    StateError,
)

__all__ = [
    "ArgumentError",
    "InvariantViolationError",
    "MissingDependencyError",
    "NumericalError",
    "OrchidWsindyError",
    "ReconstructionError",
    "StateError",
]
