"""Per-snapshot driver for the streaming POD."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from time import perf_counter

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.config.models import PodSettings
from orchid_wsindy.observability.logging import get_logger
from orchid_wsindy.observability.metrics import MetricsRecorder
from orchid_wsindy.observability.observable import ObservableMixin
from orchid_wsindy.pod.basis import PodBasis, init_from_window, reinit_from_window
from orchid_wsindy.runtime.errors import StateError

logger = get_logger(__name__)


class PodEventKind(StrEnum):
    COLLECTING = "collecting"
    INITIALIZED = "initialized"
    TRACKED = "tracked"
    MODE_ADDED = "mode_added"
    REINIT_STARTED = "reinit_started"


@dataclass(frozen=True, slots=True, eq=False)
class PodEvent:
    """Outcome of feeding one snapshot.

    ``INITIALIZED`` events carry the window's temporal values (``L x p0``) and the
    index of the first window snapshot.
    """

    kind: PodEventKind
    n: int
    residual: float | None = None
    window_temporal: NDArray[np.float64] | None = None
    window_start: int | None = None


class StreamingPod(ObservableMixin):
    """Collect a window, take one SVD, then grow the basis one mode at a time.

    With reinitialization enabled, a snapshot that would push the mode count
    past ``mode_cap`` starts a new epoch: the current basis is retired and a
    fresh window (beginning with that snapshot) is collected, using the relaxed
    residual threshold from then on.
    """

    _component_name = "streaming_pod"

    def __init__(
        self,
        settings: PodSettings,
        *,
        record_residuals: bool = False,
        metrics: MetricsRecorder | None = None,
    ) -> None:
        self._settings = settings
        self._metrics = metrics
        self._record_residuals = record_residuals
        self._window: list[NDArray[np.float64]] = []
        self._window_start = 0
        self._residual_threshold = settings.residual_threshold
        self.basis: PodBasis | None = None
        self.retired: list[PodBasis] = []
        self.epoch = 0
        self.residual_trace: list[tuple[int, float]] = []

    @property
    def collecting(self) -> bool:
        return self.basis is None

    @property
    def pending(self) -> int:
        return len(self._window)

    @property
    def residual_threshold(self) -> float:
        return self._residual_threshold

    def push(self, v: ArrayLike, n: int) -> PodEvent:
        vector = np.array(v, dtype=np.float64)
        if self.basis is None:
            if not self._window:
                self._window_start = n
            self._window.append(vector)
            if len(self._window) < self._settings.window:
                return PodEvent(PodEventKind.COLLECTING, n)
            return self._initialize(n)

        if not np.any(vector):
            logger.debug("pod_zero_snapshot", n=n)
            return PodEvent(PodEventKind.TRACKED, n)

        residual = self.basis.residual(vector)
        if self._record_residuals:
            self.residual_trace.append((n, residual))
        if residual <= self._residual_threshold:
            return PodEvent(PodEventKind.TRACKED, n, residual)

        reinit = self._settings.reinit
        if reinit.enabled and self.basis.n_modes >= reinit.mode_cap:
            logger.info(
                "pod_reinit_started",
                n=n,
                epoch=self.epoch + 1,
                modes=self.basis.n_modes,
                residual=residual,
            )
            self.retired.append(self.basis)
            self.basis = None
            self.epoch += 1
            if reinit.relaxed_residual_threshold is not None:
                self._residual_threshold = reinit.relaxed_residual_threshold
            self._window = [vector]
            self._window_start = n
            return PodEvent(PodEventKind.REINIT_STARTED, n, residual)

        self.basis.maybe_add_mode(vector, n)
        self._metrics_recorder().observe_mode_added(epoch=self.epoch)
        logger.info(
            "pod_mode_added", n=n, residual=residual, modes=self.basis.n_modes, epoch=self.epoch
        )
        return PodEvent(PodEventKind.MODE_ADDED, n, residual)

    def flush(self) -> PodEvent | None:
        """Initialize from a partial window when the stream ends while collecting."""
        if self.basis is not None or not self._window:
            return None
        last = self._window_start + len(self._window) - 1
        logger.warning(
            "pod_short_window",
            collected=len(self._window),
            window=self._settings.window,
            epoch=self.epoch,
        )
        return self._initialize(last, allow_short=True)

    def _initialize(self, n: int, *, allow_short: bool = False) -> PodEvent:
        if not self._window:
            raise StateError("no snapshots collected")
        started = perf_counter()
        reinit = self._settings.reinit
        window = np.column_stack(self._window)
        max_modes = reinit.mode_cap if reinit.enabled else None
        try:
            if self.retired:
                basis, sigma, right = reinit_from_window(
                    self.retired[-1],
                    window,
                    start=self._window_start,
                    residual_threshold=self._residual_threshold,
                    max_modes=max_modes,
                    normalize=self._settings.normalize_spectrum,
                    allow_short=allow_short,
                )
            else:
                basis, sigma, right = init_from_window(
                    window,
                    self._settings.spectral_threshold,
                    residual_threshold=self._residual_threshold,
                    birth=n,
                    start=self._window_start,
                    max_modes=max_modes,
                    normalize=self._settings.normalize_spectrum,
                    allow_short=allow_short,
                )
        except Exception as exc:
            self._observe_error("init_svd", started, exc)
            raise
        self._observe_stage("init_svd", started, success=True)
        self.basis = basis
        window_start = self._window_start
        self._window = []
        logger.info(
            "pod_initialized",
            n=n,
            modes=basis.n_modes,
            window=basis.window,
            epoch=self.epoch,
            smallest_kept=float(sigma[-1]),
        )
        return PodEvent(
            PodEventKind.INITIALIZED,
            n,
            window_temporal=sigma[:, np.newaxis] * right.T,
            window_start=window_start,
        )
