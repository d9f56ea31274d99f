"""Single-pass compressor: streaming POD feeding weak-form accumulators.

Each snapshot is touched once. While the POD collects its first window no
accumulator exists; the window's temporal values are replayed into the first
segment right after the SVD. A mode birth closes the running segment at the
previous snapshot, extends the monomial projection by one variable and opens
a new segment at the birth snapshot.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from time import perf_counter

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.config.models import CompressionSettings
from orchid_wsindy.observability.logging import get_logger
from orchid_wsindy.observability.metrics import MetricsRecorder
from orchid_wsindy.observability.observable import ObservableMixin
from orchid_wsindy.pipeline.archive import RestartSample
from orchid_wsindy.pipeline.problems import ProblemSegment, ProblemSet
from orchid_wsindy.pod.basis import PodBasis
from orchid_wsindy.pod.streaming import PodEvent, PodEventKind, StreamingPod
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError, StateError
from orchid_wsindy.sindy.accumulator import WeakSindyAccumulator
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.quadrature import QuadratureRule

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class EpochResult:
    """Online output of one POD epoch: frozen problems, basis and restarts."""

    index: int
    start: int
    end: int
    problems: ProblemSet
    projection: MonomialBasis
    restarts: tuple[RestartSample, ...]
    basis: PodBasis | None = None

    @property
    def n_modes(self) -> int:
        return self.projection.n_vars

    @property
    def online_entries(self) -> int:
        return self.problems.total_entries


@dataclass(frozen=True, slots=True, eq=False)
class CompressionResult:
    """Everything the online pass hands to the offline solver."""

    settings: CompressionSettings
    epochs: tuple[EpochResult, ...]
    state_dim: int
    snapshot_count: int
    residual_trace: tuple[tuple[int, float], ...] = ()

    @property
    def dt(self) -> float:
        return self.settings.stream.dt

    @property
    def online_entries(self) -> int:
        return sum(epoch.online_entries for epoch in self.epochs)

    @property
    def data_entries(self) -> int:
        return self.state_dim * self.snapshot_count


@dataclass(slots=True)
class _EpochBuilder:
    index: int
    start: int
    segments: list[ProblemSegment] = field(default_factory=list)
    restarts: list[RestartSample] = field(default_factory=list)


class StreamCompressor(ObservableMixin):
    """Push snapshots one at a time, then :meth:`finish` for the frozen problems."""

    _component_name = "stream_compressor"

    def __init__(
        self,
        settings: CompressionSettings,
        *,
        record_residuals: bool = False,
        metrics: MetricsRecorder | None = None,
    ) -> None:
        self._settings = settings
        self._metrics = metrics
        self._rule = QuadratureRule(settings.quadrature.degree, settings.stream.dt)
        self._test = FourierTestBasis(settings.test_functions.half_count, settings.stream.horizon)
        self._pod = (
            StreamingPod(settings.pod, record_residuals=record_residuals, metrics=metrics)
            if settings.pod.enabled
            else None
        )
        self._state_dim: int | None = None
        self._count = 0
        self._epoch = _EpochBuilder(index=0, start=0)
        self._epochs: list[EpochResult] = []
        self._accumulator: WeakSindyAccumulator | None = None
        self._projection: MonomialBasis | None = None
        self._segment_start = 0
        self._last_index = -1
        self._started: float | None = None
        self._finished = False

    @property
    def test(self) -> FourierTestBasis:
        return self._test

    @property
    def count(self) -> int:
        return self._count

    @property
    def projection(self) -> MonomialBasis | None:
        return self._projection

    @property
    def footprint(self) -> int:
        """Stored problem entries so far, including the open segment."""
        frozen = sum(epoch.online_entries for epoch in self._epochs)
        frozen += sum(s.b.size + s.G.size for s in self._epoch.segments)
        if self._accumulator is not None:
            frozen += self._accumulator.entries
        return frozen

    def push(self, frame: ArrayLike) -> None:
        if self._finished:
            raise StateError("compressor already finished")
        snapshot = np.asarray(frame, dtype=np.float64)
        if snapshot.ndim != 1:
            raise ArgumentError(f"snapshot must be a vector, got shape {snapshot.shape}")
        if self._state_dim is None:
            self._state_dim = int(snapshot.shape[0])
            self._started = perf_counter()
        elif snapshot.shape[0] != self._state_dim:
            raise InvariantViolationError(
                f"snapshot {self._count} has {snapshot.shape[0]} values, expected {self._state_dim}"
            )
        n = self._count
        self._count += 1

        if self._pod is None:
            if self._accumulator is None:
                self._open_segment(n, self._fresh_projection(self._state_dim))
            self._consume(n, snapshot)
            return
        self._dispatch(self._pod.push(snapshot, n), snapshot)

    def finish(self) -> CompressionResult:
        if self._finished:
            raise StateError("compressor already finished")
        if self._count == 0 or self._state_dim is None:
            raise ArgumentError("cannot compress an empty stream")
        started = self._started if self._started is not None else perf_counter()
        try:
            if self._pod is not None:
                event = self._pod.flush()
                if event is not None:
                    self._dispatch(event, None)
            self._close_epoch(self._pod.basis if self._pod is not None else None)
        except Exception as exc:
            self._observe_error("online", started, exc)
            raise
        self._finished = True
        self._observe_stage("online", started, success=True)

        recorder = self._metrics_recorder()
        recorder.observe_snapshots(count=self._count)
        result = CompressionResult(
            settings=self._settings,
            epochs=tuple(self._epochs),
            state_dim=self._state_dim,
            snapshot_count=self._count,
            residual_trace=tuple(self._pod.residual_trace) if self._pod is not None else (),
        )
        recorder.observe_footprint(scope="online", entries=result.online_entries)
        logger.info(
            "compression_online_finished",
            snapshots=self._count,
            epochs=len(result.epochs),
            modes=[epoch.n_modes for epoch in result.epochs],
            entries=result.online_entries,
        )
        return result

    def _fresh_projection(self, n_vars: int) -> MonomialBasis:
        projection = self._settings.projection
        return MonomialBasis(n_vars, projection.degree, projection.policy)

    def _dispatch(self, event: PodEvent, snapshot: NDArray[np.float64] | None) -> None:
        pod = self._pod
        if pod is None:
            raise StateError("POD events without a POD")
        match event.kind:
            case PodEventKind.COLLECTING:
                return
            case PodEventKind.INITIALIZED:
                if pod.basis is None or event.window_temporal is None or event.window_start is None:
                    raise StateError("initialization event without a basis")
                self._open_segment(event.window_start, self._fresh_projection(pod.basis.n_modes))
                for offset, column in enumerate(event.window_temporal.T):
                    self._consume(event.window_start + offset, column)
            case PodEventKind.REINIT_STARTED:
                self._close_epoch(pod.retired[-1])
                self._epoch = _EpochBuilder(index=pod.epoch, start=event.n)
            case PodEventKind.TRACKED:
                if pod.basis is None or snapshot is None:
                    raise StateError("tracked event before initialization")
                self._consume(event.n, pod.basis.temporal_coefficient(snapshot))
            case PodEventKind.MODE_ADDED:
                if pod.basis is None or self._projection is None or snapshot is None:
                    raise StateError("mode added before initialization")
                self._close_segment()
                self._open_segment(event.n, self._projection.extend(pod.basis.n_modes))
                self._consume(event.n, pod.basis.temporal_coefficient(snapshot), seam=True)

    def _open_segment(self, n: int, projection: MonomialBasis) -> None:
        self._projection = projection
        self._segment_start = n
        self._accumulator = WeakSindyAccumulator(
            test=self._test,
            projection=projection,
            rule=self._rule,
            boundary_terms=self._settings.test_functions.boundary_terms,
        )

    def _consume(self, n: int, values: NDArray[np.float64], *, seam: bool = False) -> None:
        if self._accumulator is None:
            raise StateError("no open segment")
        self._accumulator.push(n * self._settings.stream.dt, values)
        self._last_index = n
        stride = self._settings.stream.restart_stride
        if seam or n == self._epoch.start or n % stride == 0:
            self._epoch.restarts.append(RestartSample(n, np.array(values), seam=seam))

    def _close_segment(self) -> None:
        accumulator = self._accumulator
        if accumulator is None:
            raise StateError("no open segment")
        accumulator.close()
        self._epoch.segments.append(
            ProblemSegment(
                b=accumulator.b.copy(),
                G=accumulator.G.copy(),
                start=self._segment_start,
                end=self._last_index,
            )
        )
        self._accumulator = None

    def _close_epoch(self, basis: PodBasis | None) -> None:
        self._close_segment()
        if self._projection is None:
            raise StateError("epoch closed without a projection")
        problems = ProblemSet(tuple(self._epoch.segments))
        self._epochs.append(
            EpochResult(
                index=self._epoch.index,
                start=self._epoch.start,
                end=self._last_index,
                problems=problems,
                projection=self._projection,
                restarts=tuple(self._epoch.restarts),
                basis=basis.copy() if basis is not None else None,
            )
        )
        logger.info(
            "epoch_closed",
            epoch=self._epoch.index,
            start=self._epoch.start,
            end=self._last_index,
            segments=len(problems.segments),
            entries=problems.total_entries,
        )


def process_stream(
    frames: Iterable[ArrayLike],
    settings: CompressionSettings,
    *,
    record_residuals: bool = False,
    metrics: MetricsRecorder | None = None,
) -> CompressionResult:
    """Run the online pass over an iterable of snapshots."""
    compressor = StreamCompressor(settings, record_residuals=record_residuals, metrics=metrics)
    for frame in frames:
        compressor.push(frame)
    return compressor.finish()
