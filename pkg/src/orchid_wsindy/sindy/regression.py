"""Sequential threshold least squares with ridge regularization."""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.config.models import FitSettings
from orchid_wsindy.observability.logging import get_logger
from orchid_wsindy.runtime.errors import ArgumentError

logger = get_logger(__name__)

FitStatus = Literal["converged", "empty", "max_iterations"]


@dataclass(frozen=True, slots=True, eq=False)
class SparseCoefficients:
    """Dense-length coefficient vector with an explicit support."""

    values: NDArray[np.float64]
    support: tuple[int, ...]
    status: FitStatus = "converged"
    iterations: int = 0

    @property
    def length(self) -> int:
        return int(self.values.shape[0])

    @property
    def nnz(self) -> int:
        return len(self.support)

    @classmethod
    def from_sparse(
        cls, length: int, support: Sequence[int], values: Sequence[float]
    ) -> SparseCoefficients:
        dense = np.zeros(length)
        index = np.asarray(support, dtype=np.int64)
        dense[index] = np.asarray(values, dtype=np.float64)
        return cls(values=dense, support=tuple(int(i) for i in index))


def ridge_solve(G: ArrayLike, b: ArrayLike, regularization: float = 0.0) -> NDArray[np.float64]:
    """Minimize ``||G c - b||^2 + lambda ||c||^2``.

    ``lambda > 0`` solves the normal equations with a symmetric positive-definite
    factorization; ``lambda = 0`` uses a complete orthogonal factorization.
    ``b`` may hold several right-hand sides as columns.
    """
    design = np.asarray(G, dtype=np.float64)
    target = np.asarray(b, dtype=np.float64)
    if design.ndim != 2 or design.shape[0] < 1 or design.shape[1] < 1:
        raise ArgumentError(f"design matrix must be K x J with K, J >= 1, got {design.shape}")
    if target.shape[0] != design.shape[0]:
        raise ArgumentError(f"target rows {target.shape[0]} != design rows {design.shape[0]}")
    if regularization < 0.0:
        raise ArgumentError("regularization must be nonnegative")
    if not (np.isfinite(design).all() and np.isfinite(target).all()):
        raise ArgumentError("non-finite entries in the regression system")

    if regularization > 0.0:
        gram = design.T @ design
        gram[np.diag_indices_from(gram)] += regularization
        return scipy.linalg.solve(gram, design.T @ target, assume_a="pos")
    solution, *_ = scipy.linalg.lstsq(design, target, lapack_driver="gelsy")
    return solution


def stlsq(G: ArrayLike, b: ArrayLike, settings: FitSettings | None = None) -> SparseCoefficients:
    """Prune the smallest sub-threshold coefficient, one column per pass, and re-solve."""
    settings = settings or FitSettings()
    design = np.asarray(G, dtype=np.float64)
    target = np.asarray(b, dtype=np.float64)
    if target.ndim != 1:
        raise ArgumentError("stlsq fits a single target vector")
    length = design.shape[1] if design.ndim == 2 else 0

    support = np.arange(length)
    coefficients = ridge_solve(design, target, settings.regularization)
    iterations = 0
    status: FitStatus = "converged"
    while True:
        magnitudes = np.abs(coefficients)
        if not (magnitudes < settings.threshold).any():
            break
        if iterations >= settings.max_iterations:
            status = "max_iterations"
            break
        support = np.delete(support, int(np.argmin(magnitudes)))
        iterations += 1
        if support.size == 0:
            coefficients = np.zeros(0)
            break
        coefficients = ridge_solve(design[:, support], target, settings.regularization)

    dense = np.zeros(length)
    dense[support] = coefficients
    if support.size == 0:
        status = "empty"
        logger.warning("stlsq_empty_support", columns=length, threshold=settings.threshold)
    elif status == "max_iterations":
        logger.warning("stlsq_iteration_cap", iterations=iterations, support=int(support.size))
    return SparseCoefficients(
        values=dense,
        support=tuple(int(i) for i in support),
        status=status,
        iterations=iterations,
    )


def fit_targets(
    systems: Sequence[tuple[NDArray[np.float64], NDArray[np.float64]]],
    settings: Sequence[FitSettings],
    *,
    max_workers: int | None = None,
) -> list[SparseCoefficients]:
    """Run independent ``stlsq`` fits in a thread pool, preserving order."""
    if len(systems) != len(settings):
        raise ArgumentError(f"{len(systems)} systems but {len(settings)} fit settings")
    if not systems:
        return []
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [
            pool.submit(stlsq, design, target, fit)
            for (design, target), fit in zip(systems, settings, strict=True)
        ]
        return [future.result() for future in futures]


def render_equations(
    coefficients: Sequence[SparseCoefficients],
    labels: Sequence[str],
    *,
    names: Sequence[str] | None = None,
    precision: int = 4,
) -> list[str]:
    """Readable right-hand sides such as ``d u1/dt = -10 u1 + 10 u2``."""
    names = names or [f"u{i + 1}" for i in range(len(coefficients))]
    lines = []
    for name, fit in zip(names, coefficients, strict=True):
        terms = []
        for index in fit.support:
            value = fit.values[index]
            label = labels[index]
            magnitude = f"{abs(value):.{precision}g}"
            body = magnitude if label == "1" else f"{magnitude} {label}"
            sign = "-" if value < 0 else "+"
            terms.append((sign, body))
        if not terms:
            rhs = "0"
        else:
            first_sign, first_body = terms[0]
            rhs = ("-" if first_sign == "-" else "") + first_body
            rhs += "".join(f" {sign} {body}" for sign, body in terms[1:])
        lines.append(f"d {name}/dt = {rhs}")
    return lines
