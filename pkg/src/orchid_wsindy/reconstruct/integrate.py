"""Adaptive explicit Runge-Kutta integration sampled on a fixed grid."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp

from orchid_wsindy.runtime.errors import ArgumentError, ReconstructionError

RTOL = 1e-8
ATOL = 1e-10
METHOD = "DOP853"

RightHandSide = Callable[[float, NDArray[np.float64]], NDArray[np.float64]]


def integrate_on_grid(
    rhs: RightHandSide,
    initial: ArrayLike,
    times: ArrayLike,
    *,
    bound: float | None = None,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> NDArray[np.float64]:
    """Integrate ``y' = rhs(t, y)`` and return the samples at ``times`` as rows.

    ``bound`` stops the integration once ``max |y|`` exceeds it; both that and a
    solver failure raise :class:`ReconstructionError` with the failing time.
    """
    grid = np.asarray(times, dtype=np.float64)
    y0 = np.asarray(initial, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ArgumentError("integration grid must be a non-empty vector")
    if np.any(np.diff(grid) <= 0.0):
        raise ArgumentError("integration grid must be strictly increasing")
    if grid.size == 1:
        return y0[np.newaxis, :].copy()

    events = None
    if bound is not None:

        def blow_up(_: float, y: NDArray[np.float64]) -> float:
            return bound - float(np.max(np.abs(y)))

        blow_up.terminal = True  # type: ignore[attr-defined]
        events = [blow_up]

    solution = solve_ivp(
        rhs,
        (float(grid[0]), float(grid[-1])),
        y0,
        method=METHOD,
        t_eval=grid,
        events=events,
        rtol=rtol,
        atol=atol,
    )
    if solution.status == 1:
        raise ReconstructionError(float(solution.t_events[0][0]), f"|y| exceeded {bound:.3g}")
    if solution.status != 0:
        failed_at = float(solution.t[-1]) if solution.t.size else float(grid[0])
        raise ReconstructionError(failed_at, str(solution.message))
    samples = solution.y.T
    if samples.shape[0] != grid.size:
        raise ReconstructionError(float(grid[samples.shape[0]]), "solver stopped early")
    if not np.isfinite(samples).all():
        first_bad = int(np.argmin(np.isfinite(samples).all(axis=1)))
        raise ReconstructionError(float(grid[first_bad]), "non-finite state")
    return samples
