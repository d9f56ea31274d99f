"""Configuration loading and validation module."""

from orchid_wsindy.config.errors import (
    ConfigError,
    ConfigFileNotFoundError,
    ConfigValidationError,
    EmptyBasisError,
    PlaceholderResolutionError,
)
from orchid_wsindy.config.loader import deep_merge, load_config, load_config_file
from orchid_wsindy.config.models import (
    CompressionSettings,
    FitSettings,
    FittingSettings,
    FourierSettings,
    LoggingSettings,
    ObservabilitySettings,
    PodSettings,
    ProjectionSettings,
    QuadratureSettings,
    ReinitSettings,
    ServiceSettings,
    StreamSettings,
)

__all__ = [
    "CompressionSettings",
    "ConfigError",
    "ConfigFileNotFoundError",
    "ConfigValidationError",
    "EmptyBasisError",
    "FitSettings",
    "FittingSettings",
    "FourierSettings",
    "LoggingSettings",
    "ObservabilitySettings",
    "PlaceholderResolutionError",
    "PodSettings",
    "ProjectionSettings",
    "QuadratureSettings",
    "ReinitSettings",
    "ServiceSettings",
    "StreamSettings",
    "deep_merge",
    "load_config",
    "load_config_file",
]
