"""Deterministic test-data generators."""

from orchid_wsindy.datagen.field import (
    FieldMode,
    default_field_modes,
    drifting_band,
    sine_pattern,
    synthetic_field,
)
from orchid_wsindy.datagen.lorenz import DEFAULT_INITIAL_STATE, lorenz, lorenz_rhs

__all__ = [
    "DEFAULT_INITIAL_STATE",
    "FieldMode",
    "default_field_modes",
    "drifting_band",
    "lorenz",
    "lorenz_rhs",
    "sine_pattern",
    "synthetic_field",
]
