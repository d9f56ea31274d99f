"""Offline pass: block-triangular sparse regression for every epoch."""

from __future__ import annotations

from time import perf_counter

from orchid_wsindy.config.models import FittingSettings
from orchid_wsindy.observability.logging import get_logger, run_scope
from orchid_wsindy.observability.metrics import MetricsRecorder
from orchid_wsindy.observability.observable import ObservableMixin
from orchid_wsindy.pipeline.archive import EpochArchive, SurrogateArchive
from orchid_wsindy.pipeline.online import CompressionResult, EpochResult
from orchid_wsindy.pipeline.problems import build, solve
from orchid_wsindy.sindy.bases import FourierTestBasis

logger = get_logger(__name__)


class SurrogateFitter(ObservableMixin):
    """Turn frozen online problems into a :class:`SurrogateArchive`."""

    _component_name = "surrogate_fitter"

    def __init__(
        self,
        fitting: FittingSettings | None = None,
        *,
        metrics: MetricsRecorder | None = None,
    ) -> None:
        self._fitting = fitting
        self._metrics = metrics

    def fit_epoch(self, epoch: EpochResult, fitting: FittingSettings) -> EpochArchive:
        with run_scope(epoch=epoch.index):
            system = build(epoch.problems)
            fits = [fitting.for_mode(mode) for mode in range(system.n_modes)]
            coefficients = solve(system, fits, max_workers=fitting.max_workers)
        basis = epoch.basis
        if basis is None:
            activations = (epoch.start,) * epoch.n_modes
        else:
            activations = tuple(basis.activations())
        for mode, fit in enumerate(coefficients):
            logger.debug(
                "mode_fitted",
                epoch=epoch.index,
                mode=mode + 1,
                support=fit.nnz,
                status=fit.status,
                iterations=fit.iterations,
            )
        return EpochArchive(
            index=epoch.index,
            start=epoch.start,
            end=epoch.end,
            projection=epoch.projection,
            coefficients=tuple(coefficients),
            restarts=epoch.restarts,
            activations=activations,
            modes=basis.modes.copy() if basis is not None else None,
            births=tuple(basis.births) if basis is not None else (),
            feature_counts=epoch.problems.feature_counts,
            online_entries=epoch.online_entries,
        )

    def fit(self, result: CompressionResult) -> SurrogateArchive:
        settings = result.settings
        fitting = self._fitting or settings.fitting
        started = perf_counter()
        try:
            epochs = tuple(self.fit_epoch(epoch, fitting) for epoch in result.epochs)
            pod = settings.pod
            archive = SurrogateArchive(
                state_dim=result.state_dim,
                dt=settings.stream.dt,
                snapshot_count=result.snapshot_count,
                test=FourierTestBasis(settings.test_functions.half_count, settings.stream.horizon),
                epochs=epochs,
                restart_stride=settings.stream.restart_stride,
                quadrature_degree=settings.quadrature.degree,
                pod_enabled=pod.enabled,
                spectral_threshold=pod.spectral_threshold if pod.enabled else None,
                residual_threshold=pod.residual_threshold if pod.enabled else None,
            )
        except Exception as exc:
            self._observe_error("offline", started, exc)
            raise
        self._observe_stage("offline", started, success=True)
        self._metrics_recorder().observe_footprint(scope="offline", entries=archive.stored_entries)
        logger.info(
            "compression_offline_finished",
            epochs=len(epochs),
            nonzeros=sum(fit.nnz for epoch in epochs for fit in epoch.coefficients),
        )
        return archive


def compress(
    result: CompressionResult,
    fitting: FittingSettings | None = None,
    *,
    metrics: MetricsRecorder | None = None,
) -> SurrogateArchive:
    """Solve the offline regressions of ``result`` and package the surrogate."""
    return SurrogateFitter(fitting, metrics=metrics).fit(result)
