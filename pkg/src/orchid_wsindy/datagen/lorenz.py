"""Lorenz system reference trajectories."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from orchid_wsindy.reconstruct.integrate import integrate_on_grid
from orchid_wsindy.runtime.errors import ArgumentError

SIGMA = 10.0
RHO = 28.0
BETA = 8.0 / 3.0
DEFAULT_INITIAL_STATE = (-8.0, 8.0, 27.0)


def lorenz_rhs(
    state: NDArray[np.float64],
    *,
    sigma: float = SIGMA,
    rho: float = RHO,
    beta: float = BETA,
) -> NDArray[np.float64]:
    x, y, z = state
    return np.array([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])


def lorenz(
    n_steps: int = 10001,
    dt: float = 0.001,
    initial_state: Sequence[float] = DEFAULT_INITIAL_STATE,
    *,
    sigma: float = SIGMA,
    rho: float = RHO,
    beta: float = BETA,
) -> NDArray[np.float64]:
    """``(n_steps, 3)`` samples at ``t = n dt``; the defaults cover ``[0, 10]``."""
    if n_steps < 2:
        raise ArgumentError(f"at least two snapshots are required, got {n_steps}")
    if not dt > 0.0:
        raise ArgumentError(f"time step must be positive, got {dt}")
    initial = np.asarray(initial_state, dtype=np.float64)
    if initial.shape != (3,):
        raise ArgumentError(f"initial state must have three components, got {initial.shape}")
    times = np.arange(n_steps) * dt
    return integrate_on_grid(
        lambda _, y: lorenz_rhs(y, sigma=sigma, rho=rho, beta=beta), initial, times
    )
