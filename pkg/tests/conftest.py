from __future__ import annotations

from collections.abc import Callable
from typing import Any

import numpy as np
import pytest

from orchid_wsindy.config import CompressionSettings, deep_merge
from orchid_wsindy.datagen import FieldMode, synthetic_field

SettingsFactory = Callable[..., CompressionSettings]


@pytest.fixture()
def make_settings() -> SettingsFactory:
    """Build settings from a small base, deep-merging keyword sections over it."""

    def factory(**sections: Any) -> CompressionSettings:
        base: dict[str, Any] = {
            "logging": {"level": "DEBUG", "format": "text"},
            "stream": {"dt": 0.1, "horizon": 5.9, "restart_stride": 20},
            "projection": {"policy": "total", "degree": 1},
            "test_functions": {"half_count": 3},
            "pod": {"enabled": True, "window": 10},
            "fitting": {"default": {"threshold": 0.01, "regularization": 1e-10}},
        }
        return CompressionSettings.model_validate(deep_merge(base, sections))

    return factory


@pytest.fixture()
def onset_modes() -> list[FieldMode]:
    """Three patterns present from the start plus one switching on at snapshot 30."""
    return [
        FieldMode((1, 1), "constant", amplitude=3.0),
        FieldMode((1, 2), "cos", amplitude=2.0, frequency=2.0),
        FieldMode((2, 1), "sin", amplitude=2.0, frequency=2.0),
        FieldMode((2, 3), "constant", amplitude=2.0, onset=30),
    ]


@pytest.fixture()
def onset_frames(onset_modes: list[FieldMode]) -> list[np.ndarray]:
    return list(synthetic_field(6, 8, 60, 0.1, onset_modes))
