"""Field synthesis from temporal modes and the end-to-end decoder."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from time import perf_counter

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.observability.logging import get_logger
from orchid_wsindy.observability.metrics import MetricsRecorder
from orchid_wsindy.observability.observable import ObservableMixin
from orchid_wsindy.pipeline.archive import EpochArchive, SurrogateArchive
from orchid_wsindy.pod.basis import PodBasis
from orchid_wsindy.reconstruct.model import SurrogateModel, reconstruct_temporal
from orchid_wsindy.runtime.errors import ArgumentError

logger = get_logger(__name__)


def synthesize(
    temporal: Iterable[ArrayLike], modes: PodBasis | NDArray[np.float64]
) -> Iterator[NDArray[np.float64]]:
    """Yield ``P nu`` for every row ``nu`` of ``temporal``."""
    matrix = modes.modes if isinstance(modes, PodBasis) else np.asarray(modes, dtype=np.float64)
    for row in temporal:
        values = np.asarray(row, dtype=np.float64)
        if values.shape != (matrix.shape[1],):
            raise ArgumentError(
                f"temporal row of shape {values.shape} does not match {matrix.shape[1]} modes"
            )
        yield matrix @ values


def project_stream(
    frames: Iterable[ArrayLike], archive: SurrogateArchive
) -> Iterator[NDArray[np.float64]]:
    """POD-only reconstruction using the modes active at each snapshot."""
    epochs = iter(archive.epochs)
    epoch: EpochArchive | None = None
    activations = np.zeros(0, dtype=np.int64)
    for n, frame in enumerate(frames):
        snapshot = np.asarray(frame, dtype=np.float64)
        while epoch is None or n > epoch.end:
            epoch = next(epochs, None)
            if epoch is None:
                raise ArgumentError(
                    f"stream is longer than the {archive.snapshot_count} archived snapshots"
                )
            activations = np.asarray(epoch.activations)
        if epoch.modes is None:
            yield snapshot
            continue
        active = epoch.modes[:, activations <= n]
        yield active @ (active.T @ snapshot)


class SurrogateDecoder(ObservableMixin):
    """Regenerate snapshots from a :class:`SurrogateArchive`, one epoch at a time."""

    _component_name = "surrogate_decoder"

    def __init__(
        self, *, max_workers: int | None = None, metrics: MetricsRecorder | None = None
    ) -> None:
        self._max_workers = max_workers
        self._metrics = metrics

    def decode_temporal(
        self, archive: SurrogateArchive, epoch: EpochArchive
    ) -> NDArray[np.float64]:
        started = perf_counter()
        try:
            model = SurrogateModel.from_epoch(epoch, archive.dt)
            temporal = reconstruct_temporal(model, max_workers=self._max_workers)
        except Exception as exc:
            self._observe_error("decode", started, exc)
            logger.error("decode_failed", epoch=epoch.index, error=str(exc))
            raise
        self._observe_stage("decode", started, success=True)
        return temporal

    def decode(self, archive: SurrogateArchive) -> Iterator[NDArray[np.float64]]:
        for epoch in archive.epochs:
            temporal = self.decode_temporal(archive, epoch)
            logger.debug("epoch_decoded", epoch=epoch.index, snapshots=temporal.shape[0])
            if epoch.modes is None:
                yield from temporal
            else:
                yield from synthesize(temporal, epoch.modes)
