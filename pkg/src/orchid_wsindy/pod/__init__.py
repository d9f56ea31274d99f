"""Streaming proper orthogonal decomposition."""

from orchid_wsindy.pod.basis import (
    ORTHONORMALITY_TOLERANCE,
    PodBasis,
    init_from_window,
    reinit_from_window,
    truncation_error,
)
from orchid_wsindy.pod.streaming import PodEvent, PodEventKind, StreamingPod

__all__ = [
    "ORTHONORMALITY_TOLERANCE",
    "PodBasis",
    "PodEvent",
    "PodEventKind",
    "StreamingPod",
    "init_from_window",
    "reinit_from_window",
    "truncation_error",
]
