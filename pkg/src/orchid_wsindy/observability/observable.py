"""Reusable observability mixin for pipeline components."""

from __future__ import annotations

from time import perf_counter
from typing import TYPE_CHECKING, ClassVar

if TYPE_CHECKING:
    from orchid_wsindy.observability.metrics import MetricsRecorder


class ObservableMixin:
    """Mixin providing ``_observe_stage``, ``_observe_error`` and ``_metrics_recorder``.

    Subclasses set ``_component_name`` at class level and may provide ``_metrics``
    (instance attribute) to override the global metrics recorder.
    """

    _component_name: ClassVar[str]
    _metrics: MetricsRecorder | None = None

    def _metrics_recorder(self) -> MetricsRecorder:
        from orchid_wsindy.observability.metrics import get_metrics_recorder

        return get_metrics_recorder() if self._metrics is None else self._metrics

    def _observe_stage(self, stage: str, started: float, *, success: bool) -> None:
        self._metrics_recorder().observe_stage(
            component=self._component_name,
            stage=stage,
            duration_seconds=perf_counter() - started,
            success=success,
        )

    def _observe_error(self, stage: str, started: float, exc: Exception) -> None:
        self._observe_stage(stage, started, success=False)
        self._metrics_recorder().observe_error(
            component=self._component_name,
            stage=stage,
            error_type=type(exc).__name__,
        )
