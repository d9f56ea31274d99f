"""Logging and metrics helpers."""

from orchid_wsindy.observability.logging import (
    RunContext,
    StructlogCompatLogger,
    bootstrap_logging,
    bootstrap_logging_from_settings,
    get_logger,
    get_run_context,
    new_run_id,
    run_scope,
)
from orchid_wsindy.observability.metrics import (
    MetricsRecorder,
    NoopMetricsRecorder,
    PrometheusHttpServer,
    PrometheusMetricsRecorder,
    configure_prometheus_metrics,
    get_metrics_recorder,
    render_prometheus_metrics,
    reset_metrics_recorder,
    set_metrics_recorder,
    start_prometheus_http_server,
)
from orchid_wsindy.observability.observable import ObservableMixin

__all__ = [
    "MetricsRecorder",
    "NoopMetricsRecorder",
    "ObservableMixin",
    "PrometheusHttpServer",
    "PrometheusMetricsRecorder",
    "RunContext",
    "StructlogCompatLogger",
    "bootstrap_logging",
    "bootstrap_logging_from_settings",
    "configure_prometheus_metrics",
    "get_logger",
    "get_metrics_recorder",
    "get_run_context",
    "new_run_id",
    "render_prometheus_metrics",
    "reset_metrics_recorder",
    "run_scope",
    "set_metrics_recorder",
    "start_prometheus_http_server",
]
