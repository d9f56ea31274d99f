"""Synthetic spatio-temporal fields with controllable POD rank.

Patterns are separable discrete sines ``sin(pi k (i + 1) / (h + 1))`` on an
``h x w`` grid, so patterns with distinct wave-number pairs are exactly
orthonormal. Frames are flattened row-major.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from orchid_wsindy.runtime.errors import ArgumentError

SignalKind = Literal["constant", "cos", "sin", "decay"]


@dataclass(frozen=True, slots=True)
class FieldMode:
    """One ``(pattern, signal)`` pair; ``onset`` switches it on at a snapshot index."""

    wave_numbers: tuple[int, int]
    signal: SignalKind = "cos"
    amplitude: float = 1.0
    frequency: float = 1.0
    onset: int | None = None

    def value(self, t: float, n: int) -> float:
        if self.onset is not None and n < self.onset:
            return 0.0
        match self.signal:
            case "constant":
                return self.amplitude
            case "cos":
                return self.amplitude * float(np.cos(self.frequency * t))
            case "sin":
                return self.amplitude * float(np.sin(self.frequency * t))
            case "decay":
                return self.amplitude * float(np.exp(-self.frequency * t))
        raise ArgumentError(f"unknown signal kind {self.signal!r}")


def sine_pattern(height: int, width: int, wave_numbers: tuple[int, int]) -> NDArray[np.float64]:
    """Unit-norm flattened pattern for wave numbers ``(ky, kx)``."""
    ky, kx = wave_numbers
    if not (1 <= ky <= height and 1 <= kx <= width):
        raise ArgumentError(f"wave numbers {wave_numbers} outside the {height}x{width} grid")
    rows = np.sin(np.pi * ky * np.arange(1, height + 1) / (height + 1))
    cols = np.sin(np.pi * kx * np.arange(1, width + 1) / (width + 1))
    pattern = np.outer(rows, cols).ravel()
    return pattern / np.linalg.norm(pattern)


def default_field_modes(onset: int | None = 150) -> list[FieldMode]:
    """Two oscillating patterns, a slow decay and an optional late-onset constant."""
    modes = [
        FieldMode((1, 1), "cos", amplitude=4.0, frequency=2.0 * np.pi * 0.5),
        FieldMode((1, 2), "sin", amplitude=2.0, frequency=2.0 * np.pi * 0.5),
        FieldMode((2, 1), "decay", amplitude=1.5, frequency=0.2),
    ]
    if onset is not None:
        modes.append(FieldMode((2, 3), "constant", amplitude=2.0, onset=onset))
    return modes


def synthetic_field(
    height: int,
    width: int,
    n_steps: int,
    dt: float,
    modes: Sequence[FieldMode],
    *,
    seed: int = 0,
    noise: float = 0.0,
) -> Iterator[NDArray[np.float64]]:
    """Yield ``u(t_n) = sum_i a_i(t_n) Phi_i`` for ``n = 0..n_steps-1``."""
    if height < 1 or width < 1:
        raise ArgumentError(f"grid must be non-empty, got {height}x{width}")
    if n_steps < 1:
        raise ArgumentError(f"n_steps must be positive, got {n_steps}")
    if not modes:
        raise ArgumentError("at least one field mode is required")
    pairs = [mode.wave_numbers for mode in modes]
    if len(set(pairs)) != len(pairs):
        raise ArgumentError("field modes must use distinct wave numbers")
    patterns = np.column_stack([sine_pattern(height, width, pair) for pair in pairs])
    rng = np.random.default_rng(seed)
    for n in range(n_steps):
        t = n * dt
        amplitudes = np.array([mode.value(t, n) for mode in modes])
        frame = patterns @ amplitudes
        if noise > 0.0:
            frame = frame + noise * rng.standard_normal(frame.shape[0])
        yield frame


def drifting_band(
    height: int,
    width: int,
    n_steps: int,
    dt: float,
    *,
    start: float = 5.0,
    stop: float | None = None,
    band_width: float = 1.0,
) -> Iterator[NDArray[np.float64]]:
    """A Gaussian band sweeping along the columns from ``start`` to ``stop``.

    Each new position leaves the span of earlier frames, so a streaming POD
    keeps adding modes unless it is reinitialized.
    """
    if height < 1 or width < 2 or n_steps < 2:
        raise ArgumentError("band needs a grid of at least 1x2 and two snapshots")
    stop = width - 5.0 if stop is None else stop
    columns = np.arange(width, dtype=np.float64)
    profile = 1.0 + 0.5 * np.sin(np.pi * np.arange(1, height + 1) / (height + 1))
    total = (n_steps - 1) * dt
    for n in range(n_steps):
        centre = start + (stop - start) * (n * dt) / total
        band = np.exp(-0.5 * ((columns - centre) / band_width) ** 2)
        yield np.outer(profile, band).ravel()
