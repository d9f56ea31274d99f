"""Shared fixtures for the desk-scale acceptance runs."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from orchid_wsindy.config import CompressionSettings, load_config_file
from orchid_wsindy.datagen import lorenz

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"

ConfigLoader = Callable[..., CompressionSettings]


@pytest.fixture(scope="session")
def shipped_config() -> ConfigLoader:
    """Load one of the shipped ``config/*.json`` files with optional overrides."""

    def load(name: str, **overrides: Any) -> CompressionSettings:
        return load_config_file(CONFIG_DIR / f"{name}.json", env="test", overrides=overrides)

    return load


@pytest.fixture(scope="session")
def lorenz_trajectory() -> np.ndarray:
    return lorenz()
