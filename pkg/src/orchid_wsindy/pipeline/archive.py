"""In-memory form of the compressed representation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from orchid_wsindy.runtime.errors import InvariantViolationError
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.regression import SparseCoefficients


@dataclass(frozen=True, slots=True, eq=False)
class RestartSample:
    """Stored temporal values at snapshot ``index``; ``seam`` marks a mode birth."""

    index: int
    values: NDArray[np.float64]
    seam: bool = False

    def padded(self, length: int) -> NDArray[np.float64]:
        """Values padded with zeros for modes not yet born."""
        if self.values.shape[0] > length:
            raise InvariantViolationError(
                f"restart at {self.index} holds {self.values.shape[0]} values, limit {length}"
            )
        out = np.zeros(length)
        out[: self.values.shape[0]] = self.values
        return out


@dataclass(frozen=True, slots=True, eq=False)
class EpochArchive:
    """Fitted surrogate for one POD epoch (or for the raw state when POD is off)."""

    index: int
    start: int
    end: int
    projection: MonomialBasis
    coefficients: tuple[SparseCoefficients, ...]
    restarts: tuple[RestartSample, ...]
    activations: tuple[int, ...]
    modes: NDArray[np.float64] | None = None
    births: tuple[int, ...] = ()
    feature_counts: tuple[int, ...] = ()
    online_entries: int = 0

    def __post_init__(self) -> None:
        n_modes = self.projection.n_vars
        if len(self.coefficients) != n_modes:
            raise InvariantViolationError(
                f"{len(self.coefficients)} coefficient vectors for {n_modes} modes"
            )
        if any(fit.length != self.projection.size for fit in self.coefficients):
            raise InvariantViolationError("coefficient length must equal the projection size")
        if len(self.activations) != n_modes:
            raise InvariantViolationError("one activation index per mode is required")
        indices = [sample.index for sample in self.restarts]
        if indices != sorted(indices) or len(set(indices)) != len(indices):
            raise InvariantViolationError("restart samples must be strictly time-ordered")
        if self.modes is not None and self.modes.shape[1] != n_modes:
            raise InvariantViolationError(
                f"{self.modes.shape[1]} spatial modes for {n_modes} temporal modes"
            )

    @property
    def n_modes(self) -> int:
        return self.projection.n_vars

    @property
    def snapshot_count(self) -> int:
        return self.end - self.start + 1

    def coefficient_matrix(self) -> NDArray[np.float64]:
        """``L x J`` matrix whose row ``l`` is the right-hand side of mode ``l``."""
        return np.vstack([fit.values for fit in self.coefficients])


@dataclass(frozen=True, slots=True, eq=False)
class SurrogateArchive:
    """Everything needed to regenerate the stream offline."""

    state_dim: int
    dt: float
    snapshot_count: int
    test: FourierTestBasis
    epochs: tuple[EpochArchive, ...]
    restart_stride: int
    quadrature_degree: int
    pod_enabled: bool
    spectral_threshold: float | None = None
    residual_threshold: float | None = None

    def __post_init__(self) -> None:
        if not self.epochs:
            raise InvariantViolationError("an archive holds at least one epoch")
        expected = 0
        for epoch in self.epochs:
            if epoch.start != expected:
                raise InvariantViolationError(
                    f"epoch {epoch.index} starts at {epoch.start}, expected {expected}"
                )
            expected = epoch.end + 1
        if expected != self.snapshot_count:
            raise InvariantViolationError(
                f"epochs cover {expected} snapshots, archive declares {self.snapshot_count}"
            )

    @property
    def horizon(self) -> float:
        return self.test.length

    @property
    def online_entries(self) -> int:
        return sum(epoch.online_entries for epoch in self.epochs)

    @property
    def stored_entries(self) -> int:
        """Spatial modes, sparse coefficient pairs and restart samples (padded to ``L``)."""
        total = 0
        for epoch in self.epochs:
            if epoch.modes is not None:
                total += epoch.modes.size
            total += sum(2 * fit.nnz for fit in epoch.coefficients)
            total += epoch.n_modes * len(epoch.restarts)
        return total
