"""Percent reconstruction errors per snapshot."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import repeat

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.runtime.errors import ArgumentError


@dataclass(frozen=True, slots=True, eq=False)
class ErrorSeries:
    """``E``, ``D`` and ``E_w`` per snapshot; NaN where a norm vanishes.

    ``truncation`` is the POD-only percent error ``100 ||u - u_pod|| / ||u||``.
    """

    overall: NDArray[np.float64]
    distance: NDArray[np.float64]
    fit: NDArray[np.float64]
    truncation: NDArray[np.float64]

    def __len__(self) -> int:
        return int(self.overall.shape[0])

    def rows(self) -> NDArray[np.float64]:
        """``(N, 5)`` table ``n, E, D, E_w, truncation`` for CSV output."""
        index = np.arange(len(self), dtype=np.float64)
        return np.column_stack([index, self.overall, self.distance, self.fit, self.truncation])


def _percent(numerator: float, denominator: float) -> float:
    return 100.0 * numerator / denominator if denominator > 0.0 else float("nan")


def error_metrics(
    truth: Iterable[ArrayLike],
    approx: Iterable[ArrayLike],
    pod_only: Iterable[ArrayLike] | None = None,
) -> ErrorSeries:
    """Compare two snapshot streams, optionally against a POD-only reconstruction."""
    overall: list[float] = []
    distance: list[float] = []
    fit: list[float] = []
    truncation: list[float] = []
    pairs = zip(truth, approx, strict=True)
    reference: Iterable[ArrayLike | None] = pod_only if pod_only is not None else repeat(None)
    triples = zip(pairs, reference, strict=pod_only is not None)
    try:
        for n, ((u, u_tilde), u_pod) in enumerate(triples):
            exact = np.asarray(u, dtype=np.float64)
            approximate = np.asarray(u_tilde, dtype=np.float64)
            if exact.shape != approximate.shape:
                raise ArgumentError(f"snapshot {n}: shapes {exact.shape} and {approximate.shape}")
            norm = float(np.linalg.norm(exact))
            error = float(np.linalg.norm(approximate - exact))
            overall.append(_percent(error, norm))
            if u_pod is None:
                distance.append(float("nan"))
                fit.append(float("nan"))
                truncation.append(float("nan"))
                continue
            projected = np.asarray(u_pod, dtype=np.float64)
            if projected.shape != exact.shape:
                raise ArgumentError(f"snapshot {n}: POD reconstruction has shape {projected.shape}")
            pod_error = float(np.linalg.norm(exact - projected))
            gap = float(np.linalg.norm(approximate - projected))
            distance.append(_percent(gap, float(np.linalg.norm(projected))))
            fit.append(_percent(error - pod_error, norm))
            truncation.append(_percent(pod_error, norm))
    except ArgumentError:
        raise
    except ValueError as exc:
        raise ArgumentError("streams have different lengths") from exc
    return ErrorSeries(
        overall=np.asarray(overall),
        distance=np.asarray(distance),
        fit=np.asarray(fit),
        truncation=np.asarray(truncation),
    )


def component_sup_error(truth: ArrayLike, approx: ArrayLike) -> NDArray[np.float64]:
    """Per-component ``100 max_n |u~_i - u_i| / max_n |u_i|`` over an ``(N, S)`` array."""
    exact = np.asarray(truth, dtype=np.float64)
    approximate = np.asarray(approx, dtype=np.float64)
    if exact.shape != approximate.shape or exact.ndim != 2:
        raise ArgumentError(
            f"expected equal (N, S) arrays, got {exact.shape} and {approximate.shape}"
        )
    scale = np.max(np.abs(exact), axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        peak = np.max(np.abs(approximate - exact), axis=0)
        return np.where(scale > 0.0, 100.0 * peak / scale, np.nan)
