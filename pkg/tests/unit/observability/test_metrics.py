"""Tests for Prometheus metrics recorder and exposition helpers."""

from __future__ import annotations

import pytest

from orchid_wsindy.observability.metrics import (
    NoopMetricsRecorder,
    PrometheusMetricsRecorder,
    configure_prometheus_metrics,
    get_metrics_recorder,
    render_prometheus_metrics,
    reset_metrics_recorder,
    set_metrics_recorder,
    start_prometheus_http_server,
)

prometheus_client = pytest.importorskip("prometheus_client")


def test_prometheus_metrics_registration_and_samples() -> None:
    registry = prometheus_client.CollectorRegistry()
    recorder = PrometheusMetricsRecorder(registry=registry)

    recorder.observe_stage(
        component="Stream Compressor",
        stage="finish",
        duration_seconds=0.015,
        success=True,
    )
    recorder.observe_stage(
        component="Stream Compressor",
        stage="finish",
        duration_seconds=0.022,
        success=False,
    )
    recorder.observe_error(component="stream_compressor", stage="finish", error_type="ValueError")
    recorder.observe_snapshots(count=10001)
    recorder.observe_mode_added(epoch=0)
    recorder.observe_footprint(scope="online", entries=451)

    assert (
        registry.get_sample_value(
            "orchid_wsindy_stage_throughput_total",
            {"component": "stream_compressor", "stage": "finish", "status": "success"},
        )
        == 1.0
    )
    assert (
        registry.get_sample_value(
            "orchid_wsindy_stage_errors_total",
            {"component": "stream_compressor", "stage": "finish", "error_type": "valueerror"},
        )
        == 1.0
    )
    assert (
        registry.get_sample_value(
            "orchid_wsindy_stage_latency_seconds_count",
            {"component": "stream_compressor", "stage": "finish", "status": "error"},
        )
        == 1.0
    )
    assert registry.get_sample_value("orchid_wsindy_snapshots_total") == 10001.0
    assert registry.get_sample_value("orchid_wsindy_pod_modes_added_total", {"epoch": "0"}) == 1.0
    footprint = registry.get_sample_value("orchid_wsindy_footprint_entries", {"scope": "online"})
    assert footprint == 451.0


def test_recorders_on_one_registry_share_collectors() -> None:
    registry = prometheus_client.CollectorRegistry()
    first = PrometheusMetricsRecorder(registry=registry, prefix="lab")
    second = PrometheusMetricsRecorder(registry=registry, prefix="lab")

    first.observe_snapshots(count=2)
    second.observe_snapshots(count=3)

    assert registry.get_sample_value("lab_snapshots_total") == 5.0


def test_render_prometheus_metrics_exposes_prefix() -> None:
    registry = prometheus_client.CollectorRegistry()
    PrometheusMetricsRecorder(registry=registry).observe_footprint(scope="offline", entries=24)

    payload = render_prometheus_metrics(registry=registry)

    assert b"orchid_wsindy_footprint_entries" in payload


def test_configure_prometheus_metrics_sets_default() -> None:
    previous = get_metrics_recorder()
    registry = prometheus_client.CollectorRegistry()
    try:
        recorder = configure_prometheus_metrics(registry=registry)
        assert get_metrics_recorder() is recorder

        set_metrics_recorder(None)
        assert isinstance(get_metrics_recorder(), NoopMetricsRecorder)
    finally:
        set_metrics_recorder(previous)


def test_reset_metrics_recorder_restores_noop() -> None:
    previous = get_metrics_recorder()
    try:
        configure_prometheus_metrics(registry=prometheus_client.CollectorRegistry())
        assert isinstance(get_metrics_recorder(), PrometheusMetricsRecorder)

        reset_metrics_recorder()
        assert isinstance(get_metrics_recorder(), NoopMetricsRecorder)
    finally:
        set_metrics_recorder(previous)


def test_http_server_rejects_invalid_port() -> None:
    with pytest.raises(ValueError, match="port"):
        start_prometheus_http_server(port=0)
