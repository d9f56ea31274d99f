"""Surrogate ODE for the temporal modes and its restart-based evolution."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from orchid_wsindy.pipeline.archive import EpochArchive, RestartSample
from orchid_wsindy.reconstruct.integrate import integrate_on_grid
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError
from orchid_wsindy.sindy.bases import MonomialBasis

BLOW_UP_FACTOR = 1e6


@dataclass(frozen=True, slots=True, eq=False)
class SurrogateModel:
    """``nu' = C phi(nu)`` over one epoch, with restart samples and mode activations."""

    projection: MonomialBasis
    coefficients: NDArray[np.float64]
    activations: tuple[int, ...]
    restarts: tuple[RestartSample, ...]
    dt: float
    start: int
    end: int

    def __post_init__(self) -> None:
        expected = (self.projection.n_vars, self.projection.size)
        if self.coefficients.shape != expected:
            raise InvariantViolationError(
                f"coefficient matrix {self.coefficients.shape} does not match {expected}"
            )
        if len(self.activations) != self.projection.n_vars:
            raise InvariantViolationError("one activation index per mode is required")
        if not self.restarts or self.restarts[0].index != self.start:
            raise InvariantViolationError(f"first restart must sit at snapshot {self.start}")

    @classmethod
    def from_epoch(cls, epoch: EpochArchive, dt: float) -> SurrogateModel:
        return cls(
            projection=epoch.projection,
            coefficients=epoch.coefficient_matrix(),
            activations=epoch.activations,
            restarts=epoch.restarts,
            dt=dt,
            start=epoch.start,
            end=epoch.end,
        )

    @property
    def n_modes(self) -> int:
        return self.projection.n_vars

    def active_mask(self, index: int) -> NDArray[np.bool_]:
        return np.asarray(self.activations) <= index

    def derivative(
        self, state: NDArray[np.float64], mask: NDArray[np.bool_]
    ) -> NDArray[np.float64]:
        rates = self.coefficients @ self.projection.evaluate(state)
        rates[~mask] = 0.0
        return rates


def evolve(model: SurrogateModel, restart: RestartSample, until: int) -> NDArray[np.float64]:
    """Temporal values at snapshots ``restart.index..until`` as rows.

    Modes activated after ``restart.index`` stay at zero.
    """
    if until < restart.index:
        raise ArgumentError(f"cannot evolve backwards from {restart.index} to {until}")
    if until > model.end:
        raise ArgumentError(f"snapshot {until} lies past the epoch end {model.end}")
    mask = model.active_mask(restart.index)
    initial = restart.padded(model.n_modes)
    initial[~mask] = 0.0
    if until == restart.index:
        return initial[np.newaxis, :]
    times = np.arange(restart.index, until + 1) * model.dt
    bound = BLOW_UP_FACTOR * max(1.0, float(np.max(np.abs(initial))))
    return integrate_on_grid(
        lambda _, y: model.derivative(y, mask),
        initial,
        times,
        bound=bound,
    )


def reconstruct_temporal(
    model: SurrogateModel, *, max_workers: int | None = None
) -> NDArray[np.float64]:
    """Evolve every inter-restart interval independently and stack the rows."""
    stops = [sample.index - 1 for sample in model.restarts[1:]] + [model.end]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        pieces = list(
            pool.map(lambda pair: evolve(model, *pair), zip(model.restarts, stops, strict=True))
        )
    return np.vstack(pieces)
