"""Snapshot-method POD basis with residual-triggered growth."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.config.errors import EmptyBasisError
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError

ORTHONORMALITY_TOLERANCE = 1e-10


@dataclass(slots=True, eq=False)
class PodBasis:
    """Orthonormal spatial modes (columns of ``modes``) with birth indices.

    Snapshot indices are 0-based. The ``initial_count`` modes from the window
    SVD are born at the last window snapshot but carry temporal values for the
    whole window; later modes are born at the snapshot that triggered them.
    """

    modes: NDArray[np.float64]
    births: list[int]
    initial_count: int
    spectral_threshold: float
    residual_threshold: float
    window: int
    start: int = 0
    _gram_repasses: int = field(default=0, repr=False)

    def __post_init__(self) -> None:
        self.modes = np.asarray(self.modes, dtype=np.float64)
        if self.modes.ndim != 2:
            raise ArgumentError("modes must be an S x L matrix")
        if len(self.births) != self.modes.shape[1]:
            raise InvariantViolationError(
                f"{len(self.births)} birth indices for {self.modes.shape[1]} modes"
            )
        if any(later < earlier for earlier, later in zip(self.births, self.births[1:])):
            raise InvariantViolationError("birth indices must be nondecreasing")

    @property
    def state_dim(self) -> int:
        return int(self.modes.shape[0])

    @property
    def n_modes(self) -> int:
        return int(self.modes.shape[1])

    @property
    def added_count(self) -> int:
        return self.n_modes - self.initial_count

    @property
    def gram_repasses(self) -> int:
        return self._gram_repasses

    def activations(self) -> list[int]:
        """First snapshot index at which each mode carries a temporal value."""
        return [
            self.start if index < self.initial_count else birth
            for index, birth in enumerate(self.births)
        ]

    def residual(self, v: ArrayLike) -> float:
        """Relative residual ``||(I - P P^T) v|| / ||v||``."""
        vector = self._check_vector(v)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise ArgumentError("residual of a zero vector is undefined")
        orthogonal = vector - self.modes @ (self.modes.T @ vector)
        return float(np.linalg.norm(orthogonal)) / norm

    def temporal_coefficient(self, v: ArrayLike) -> NDArray[np.float64]:
        """Euclidean projections ``P^T v``."""
        return self.modes.T @ self._check_vector(v)

    def maybe_add_mode(self, v: ArrayLike, n: int) -> bool:
        """Append the normalized residual of ``v`` when it exceeds the threshold."""
        vector = self._check_vector(v)
        if self.residual(vector) <= self.residual_threshold:
            return False
        if self.births and n <= self.births[-1]:
            raise ArgumentError(f"snapshot {n} does not follow the last birth {self.births[-1]}")
        candidate = vector - self.modes @ (self.modes.T @ vector)
        candidate /= np.linalg.norm(candidate)
        self.modes = np.column_stack([self.modes, candidate])
        self.births.append(int(n))
        if self.drift() > ORTHONORMALITY_TOLERANCE:
            self._repass_last()
        return True

    def drift(self) -> float:
        """``max |P^T P - I|``."""
        if self.n_modes == 0:
            return 0.0
        gram = self.modes.T @ self.modes
        return float(np.max(np.abs(gram - np.eye(self.n_modes))))

    def copy(self) -> PodBasis:
        return PodBasis(
            modes=self.modes.copy(),
            births=list(self.births),
            initial_count=self.initial_count,
            spectral_threshold=self.spectral_threshold,
            residual_threshold=self.residual_threshold,
            window=self.window,
            start=self.start,
        )

    def _repass_last(self) -> None:
        previous = self.modes[:, :-1]
        column = self.modes[:, -1] - previous @ (previous.T @ self.modes[:, -1])
        self.modes[:, -1] = column / np.linalg.norm(column)
        self._gram_repasses += 1

    def _check_vector(self, v: ArrayLike) -> NDArray[np.float64]:
        vector = np.asarray(v, dtype=np.float64)
        if vector.shape != (self.state_dim,):
            raise ArgumentError(
                f"vector of shape {vector.shape} does not match state dimension {self.state_dim}"
            )
        return vector


def init_from_window(
    window: ArrayLike,
    spectral_threshold: float,
    *,
    residual_threshold: float = 0.1,
    birth: int | None = None,
    start: int = 0,
    max_modes: int | None = None,
    normalize: bool = False,
    allow_short: bool = False,
) -> tuple[PodBasis, NDArray[np.float64], NDArray[np.float64]]:
    """SVD of an ``S x p0`` snapshot window, truncated at ``spectral_threshold``.

    Returns the basis, the retained singular values and the ``p0 x L`` right
    singular vectors, so ``diag(sigma) @ V.T`` are the window's temporal values.
    Windows need ``p0 >= 2`` unless ``allow_short`` is set, which the end-of-stream
    flush does for a stream shorter than its first window.
    """
    data = np.asarray(window, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] < 1:
        raise ArgumentError(f"window must be S x p0, got {data.shape}")
    if data.shape[1] < 2 and not allow_short:
        raise ArgumentError(f"window must hold at least 2 snapshots, got {data.shape[1]}")
    left, sigma, right_t = scipy.linalg.svd(data, full_matrices=False)
    scale = sigma[0] if normalize and sigma.size and sigma[0] > 0.0 else 1.0
    kept = int(np.count_nonzero(sigma / scale >= spectral_threshold)) if sigma.size else 0
    if kept == 0 or sigma[0] == 0.0:
        raise EmptyBasisError(float(sigma[0]) if sigma.size else 0.0, spectral_threshold)
    if max_modes is not None:
        kept = min(kept, max_modes)
    count = data.shape[1]
    basis = PodBasis(
        modes=left[:, :kept].copy(),
        births=[start + count - 1 if birth is None else birth] * kept,
        initial_count=kept,
        spectral_threshold=spectral_threshold,
        residual_threshold=residual_threshold,
        window=count,
        start=start,
    )
    return basis, sigma[:kept].copy(), right_t[:kept].T.copy()


def reinit_from_window(
    basis: PodBasis,
    window: ArrayLike,
    *,
    start: int,
    residual_threshold: float | None = None,
    max_modes: int | None = None,
    normalize: bool = False,
    allow_short: bool = False,
) -> tuple[PodBasis, NDArray[np.float64], NDArray[np.float64]]:
    """Restart the streaming POD on a fresh window, optionally relaxing the residual threshold."""
    return init_from_window(
        window,
        basis.spectral_threshold,
        residual_threshold=(
            basis.residual_threshold if residual_threshold is None else residual_threshold
        ),
        start=start,
        max_modes=max_modes,
        normalize=normalize,
        allow_short=allow_short,
    )


def truncation_error(window: ArrayLike, basis: PodBasis) -> float:
    """Squared Frobenius norm ``||D - P P^T D||_F^2``."""
    data = np.asarray(window, dtype=np.float64)
    residual = data - basis.modes @ (basis.modes.T @ data)
    return float(np.sum(residual * residual))
