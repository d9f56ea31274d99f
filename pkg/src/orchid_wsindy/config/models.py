"""Typed configuration models with Pydantic validation."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ServiceSettings(BaseModel):
    """Service identification stamped on every log record."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(default="orchid-wsindy", min_length=1, description="Service name")
    version: str = Field(default="0.1.0", min_length=1, description="Service version")


class LoggingSettings(BaseModel):
    """Logging configuration."""

    model_config = ConfigDict(frozen=True)

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO", description="Log level"
    )
    format: Literal["json", "text"] = Field(default="json", description="Log output format")
    sampling: float | None = Field(
        default=None,
        ge=0.0,
        le=1.0,
        description="Optional sampling ratio for low-severity logs",
    )


class ObservabilitySettings(BaseModel):
    """Metrics settings."""

    model_config = ConfigDict(frozen=True)

    metrics_enabled: bool = Field(default=False, description="Record Prometheus metrics")
    metrics_prefix: str = Field(
        default="orchid_wsindy", min_length=1, description="Prefix for metric names"
    )
    prometheus_port: int | None = Field(
        default=None,
        ge=1,
        le=65535,
        description="Start a Prometheus exporter on this port while a command runs",
    )


class StreamSettings(BaseModel):
    """Time grid of the snapshot stream."""

    model_config = ConfigDict(frozen=True)

    dt: float = Field(..., gt=0.0, description="Uniform time step between snapshots")
    horizon: float = Field(
        ..., gt=0.0, description="Interval length T over which test functions live"
    )
    restart_stride: int = Field(
        default=1000, ge=1, description="Store a restart sample every this many snapshots"
    )


class QuadratureSettings(BaseModel):
    """Streaming quadrature rule."""

    model_config = ConfigDict(frozen=True)

    degree: int = Field(
        default=2,
        ge=2,
        le=6,
        description="Nodes per Newton-Cotes panel (2 is the streaming trapezoid)",
    )


class ProjectionSettings(BaseModel):
    """Monomial projection dictionary."""

    model_config = ConfigDict(frozen=True)

    policy: Literal["total", "max"] = Field(
        default="total", description="Bound the total degree or each exponent"
    )
    degree: int = Field(default=2, ge=1, description="Degree bound R")


class FourierSettings(BaseModel):
    """Fourier test-function family."""

    model_config = ConfigDict(frozen=True)

    half_count: int = Field(default=20, ge=1, description="Number of sine (and cosine) members")
    boundary_terms: bool = Field(
        default=True, description="Apply the integration-by-parts boundary terms"
    )


class ReinitSettings(BaseModel):
    """Restart of the streaming POD when the basis grows past a cap."""

    model_config = ConfigDict(frozen=True)

    enabled: bool = Field(default=False, description="Enable reinitialization epochs")
    mode_cap: int = Field(default=30, ge=1, description="Largest mode count per epoch")
    relaxed_residual_threshold: float | None = Field(
        default=0.15,
        ge=0.0,
        le=1.0,
        description="Residual threshold used after the first reinitialization",
    )


class PodSettings(BaseModel):
    """Streaming POD dimension reduction."""

    model_config = ConfigDict(frozen=True)

    enabled: bool = Field(
        default=True, description="Compress POD temporal modes instead of raw state"
    )
    window: int = Field(default=100, ge=2, description="Snapshots collected before the first SVD")
    spectral_threshold: float = Field(
        default=0.1, ge=0.0, description="Keep singular values at or above this value"
    )
    residual_threshold: float = Field(
        default=0.1, ge=0.0, le=1.0, description="Relative residual that triggers a new mode"
    )
    normalize_spectrum: bool = Field(
        default=False, description="Compare singular values relative to the largest one"
    )
    reinit: ReinitSettings = Field(default_factory=ReinitSettings)


class FitSettings(BaseModel):
    """Sequential threshold least squares parameters."""

    model_config = ConfigDict(frozen=True)

    threshold: float = Field(default=0.1, ge=0.0, description="Coefficient threshold")
    regularization: float = Field(default=0.0, ge=0.0, description="Ridge weight")
    max_iterations: int = Field(default=1000, ge=1, description="Pruning iterations cap")


class FittingSettings(BaseModel):
    """Offline regression settings."""

    model_config = ConfigDict(frozen=True)

    default: FitSettings = Field(default_factory=FitSettings)
    per_mode: dict[int, FitSettings] = Field(
        default_factory=dict,
        description="Overrides keyed by 1-based mode (or state component) number",
    )
    max_workers: int | None = Field(
        default=None, ge=1, description="Thread pool size for per-mode fits"
    )

    @field_validator("per_mode")
    @classmethod
    def _positive_mode_numbers(cls, value: dict[int, FitSettings]) -> dict[int, FitSettings]:
        bad = [mode for mode in value if mode < 1]
        if bad:
            raise ValueError(f"mode numbers are 1-based, got {sorted(bad)}")
        return value

    def for_mode(self, index: int) -> FitSettings:
        """Return the settings for a 0-based mode index."""
        return self.per_mode.get(index + 1, self.default)


class CompressionSettings(BaseModel):
    """Root configuration for compression, decompression and reporting."""

    model_config = ConfigDict(frozen=True)

    service: ServiceSettings = Field(default_factory=ServiceSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    observability: ObservabilitySettings = Field(default_factory=ObservabilitySettings)
    stream: StreamSettings
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    projection: ProjectionSettings = Field(default_factory=ProjectionSettings)
    test_functions: FourierSettings = Field(default_factory=FourierSettings)
    pod: PodSettings = Field(default_factory=PodSettings)
    fitting: FittingSettings = Field(default_factory=FittingSettings)

    @model_validator(mode="after")
    def _horizon_covers_one_step(self) -> CompressionSettings:
        if self.stream.horizon < self.stream.dt:
            raise ValueError("stream.horizon must be at least one time step")
        return self
