"""Prometheus metrics primitives for compression stages."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Any, Protocol

from orchid_wsindy.runtime.errors import MissingDependencyError

_LABEL_NORMALIZER = re.compile(r"[^a-zA-Z0-9_]+")

_STAGE_BUCKETS = (0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0, 300.0)


def _import_prometheus_client() -> Any:
    try:
        import prometheus_client
    except ImportError as exc:  # pragma: no cover - depends on optional extras
        raise MissingDependencyError(
            "Prometheus metrics require optional dependency 'prometheus-client'. "
            "Install with: pip install 'orchid-wsindy[observability]'"
        ) from exc
    return prometheus_client


def _sanitize_label(value: str, *, default: str = "unknown") -> str:
    normalized = _LABEL_NORMALIZER.sub("_", value.strip().lower()).strip("_")
    return normalized or default


def _consume_unused(*_values: object) -> None:
    """Mark intentionally-unused parameters as consumed."""


class MetricsRecorder(Protocol):
    """Observer contract for compression metrics."""

    def observe_stage(
        self,
        *,
        component: str,
        stage: str,
        duration_seconds: float,
        success: bool,
    ) -> None:
        """Record stage latency and throughput."""
        ...

    def observe_error(self, *, component: str, stage: str, error_type: str) -> None:
        """Record stage error counters."""
        ...

    def observe_snapshots(self, *, count: int) -> None:
        """Record snapshots consumed by the online phase."""
        ...

    def observe_mode_added(self, *, epoch: int) -> None:
        """Record a streaming POD mode addition."""
        ...

    def observe_footprint(self, *, scope: str, entries: int) -> None:
        """Record stored entry counts (online problem or offline archive)."""
        ...


class NoopMetricsRecorder:
    """No-op recorder used when metrics are not configured."""

    @staticmethod
    def observe_stage(
        *,
        component: str,
        stage: str,
        duration_seconds: float,
        success: bool,
    ) -> None:
        _consume_unused(component, stage, duration_seconds, success)

    @staticmethod
    def observe_error(*, component: str, stage: str, error_type: str) -> None:
        _consume_unused(component, stage, error_type)

    @staticmethod
    def observe_snapshots(*, count: int) -> None:
        _consume_unused(count)

    @staticmethod
    def observe_mode_added(*, epoch: int) -> None:
        _consume_unused(epoch)

    @staticmethod
    def observe_footprint(*, scope: str, entries: int) -> None:
        _consume_unused(scope, entries)


class PrometheusMetricsRecorder:
    """Prometheus-backed recorder; every series is named ``<prefix>_<suffix>``."""

    def __init__(self, *, registry: Any | None = None, prefix: str = "orchid_wsindy") -> None:
        self._client = _import_prometheus_client()
        self._registry = self._client.REGISTRY if registry is None else registry
        self._prefix = _sanitize_label(prefix, default="orchid_wsindy")
        stage_labels = ("component", "stage", "status")
        self._latency = self._collector(
            "Histogram",
            "stage_latency_seconds",
            "Stage latency in seconds.",
            stage_labels,
            buckets=_STAGE_BUCKETS,
        )
        self._throughput = self._collector(
            "Counter", "stage_throughput_total", "Completed stage runs.", stage_labels
        )
        self._errors = self._collector(
            "Counter", "stage_errors_total", "Stage errors.", ("component", "stage", "error_type")
        )
        self._snapshots = self._collector(
            "Counter", "snapshots_total", "Snapshots consumed by the online phase."
        )
        self._modes = self._collector(
            "Counter",
            "pod_modes_added_total",
            "Streaming POD modes added after initialization.",
            ("epoch",),
        )
        self._footprint = self._collector(
            "Gauge", "footprint_entries", "Stored floating-point entries.", ("scope",)
        )

    def _collector(
        self, kind: str, suffix: str, documentation: str, labels: tuple[str, ...] = (), **extra: Any
    ) -> Any:
        name = f"{self._prefix}_{suffix}"
        existing = getattr(self._registry, "_names_to_collectors", {}).get(name)
        if existing is not None:
            return existing
        factory = getattr(self._client, kind)
        return factory(name, documentation, labelnames=labels, registry=self._registry, **extra)

    def observe_stage(
        self,
        *,
        component: str,
        stage: str,
        duration_seconds: float,
        success: bool,
    ) -> None:
        component_label = _sanitize_label(component)
        stage_label = _sanitize_label(stage)
        status_label = "success" if success else "error"
        self._latency.labels(
            component=component_label, stage=stage_label, status=status_label
        ).observe(max(0.0, duration_seconds))
        self._throughput.labels(
            component=component_label, stage=stage_label, status=status_label
        ).inc()

    def observe_error(self, *, component: str, stage: str, error_type: str) -> None:
        self._errors.labels(
            component=_sanitize_label(component),
            stage=_sanitize_label(stage),
            error_type=_sanitize_label(error_type),
        ).inc()

    def observe_snapshots(self, *, count: int) -> None:
        self._snapshots.inc(max(0, count))

    def observe_mode_added(self, *, epoch: int) -> None:
        self._modes.labels(epoch=str(epoch)).inc()

    def observe_footprint(self, *, scope: str, entries: int) -> None:
        self._footprint.labels(scope=_sanitize_label(scope)).set(max(0.0, float(entries)))


_NOOP_RECORDER = NoopMetricsRecorder()
_DEFAULT_RECORDER: MetricsRecorder = _NOOP_RECORDER
_METRICS_LOCK = threading.Lock()


def get_metrics_recorder() -> MetricsRecorder:
    """Return the process-level metrics recorder."""
    with _METRICS_LOCK:
        return _DEFAULT_RECORDER


def set_metrics_recorder(recorder: MetricsRecorder | None) -> MetricsRecorder:
    """Set process-level recorder. `None` switches back to no-op."""
    global _DEFAULT_RECORDER
    with _METRICS_LOCK:
        _DEFAULT_RECORDER = _NOOP_RECORDER if recorder is None else recorder
        return _DEFAULT_RECORDER


def reset_metrics_recorder() -> None:
    """Reset the process-level recorder back to the no-op default."""
    global _DEFAULT_RECORDER
    with _METRICS_LOCK:
        _DEFAULT_RECORDER = _NOOP_RECORDER


def configure_prometheus_metrics(
    *,
    registry: Any | None = None,
    prefix: str = "orchid_wsindy",
    set_default: bool = True,
) -> PrometheusMetricsRecorder:
    """Build a Prometheus recorder and optionally set it as default."""
    recorder = PrometheusMetricsRecorder(registry=registry, prefix=prefix)
    if set_default:
        set_metrics_recorder(recorder)
    return recorder


def render_prometheus_metrics(*, registry: Any | None = None) -> bytes:
    """Render current Prometheus metrics in exposition text format."""
    prometheus_client = _import_prometheus_client()
    resolved_registry = prometheus_client.REGISTRY if registry is None else registry
    return bytes(prometheus_client.generate_latest(resolved_registry))


@dataclass(frozen=True, slots=True)
class PrometheusHttpServer:
    """Handle for the background Prometheus HTTP exporter."""

    server: Any
    thread: Any


def start_prometheus_http_server(
    *,
    port: int = 9464,
    host: str = "127.0.0.1",
    registry: Any | None = None,
) -> PrometheusHttpServer:
    """Start Prometheus exporter in a background thread."""
    if not (1 <= port <= 65535):
        raise ValueError("port must be between 1 and 65535")

    prometheus_client = _import_prometheus_client()
    resolved_registry = prometheus_client.REGISTRY if registry is None else registry
    server, thread = prometheus_client.start_http_server(
        port=port,
        addr=host,
        registry=resolved_registry,
    )
    return PrometheusHttpServer(server=server, thread=thread)
