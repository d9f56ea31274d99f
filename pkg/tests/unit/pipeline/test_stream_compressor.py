"""Tests for the single-pass stream compressor."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any
from unittest.mock import MagicMock

import numpy as np
import pytest
import scipy.linalg

from orchid_wsindy.config import CompressionSettings
from orchid_wsindy.datagen import FieldMode, synthetic_field
from orchid_wsindy.observability.metrics import NoopMetricsRecorder
from orchid_wsindy.pipeline.online import StreamCompressor, process_stream
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError, StateError
from orchid_wsindy.sindy.accumulator import static_weak_system
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.quadrature import QuadratureRule

SettingsFactory = Callable[..., CompressionSettings]

OSCILLATOR = np.array([[-0.1, 2.0], [-2.0, -0.1]])


def _oscillator(n_steps: int, dt: float) -> np.ndarray:
    start = np.array([1.0, 0.0])
    return np.array([scipy.linalg.expm(OSCILLATOR * n * dt) @ start for n in range(n_steps)])


def _weak_system(
    settings: CompressionSettings, indices: range, values: np.ndarray, projection: MonomialBasis
) -> tuple[np.ndarray, np.ndarray]:
    return static_weak_system(
        np.array([n * settings.stream.dt for n in indices]),
        values,
        test=FourierTestBasis(settings.test_functions.half_count, settings.stream.horizon),
        projection=projection,
        rule=QuadratureRule(settings.quadrature.degree, settings.stream.dt),
        boundary_terms=settings.test_functions.boundary_terms,
    )


@pytest.fixture()
def plain_settings(make_settings: SettingsFactory) -> CompressionSettings:
    return make_settings(
        pod={"enabled": False},
        stream={"dt": 0.01, "horizon": 2.0, "restart_stride": 50},
    )


class TestPlainCompression:
    """Without POD the raw state feeds one accumulator."""

    def test_matches_batch_system(self, plain_settings: CompressionSettings) -> None:
        states = _oscillator(201, 0.01)

        result = process_stream(states, plain_settings)

        assert len(result.epochs) == 1
        epoch = result.epochs[0]
        assert epoch.basis is None
        assert (epoch.start, epoch.end) == (0, 200)
        (segment,) = epoch.problems.segments
        b, G = _weak_system(plain_settings, range(201), states, MonomialBasis(2, 1))
        np.testing.assert_allclose(segment.b, b, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(segment.G, G, rtol=1e-12, atol=1e-12)

    def test_restarts_follow_stride(self, plain_settings: CompressionSettings) -> None:
        result = process_stream(_oscillator(201, 0.01), plain_settings)

        restarts = result.epochs[0].restarts
        assert [sample.index for sample in restarts] == [0, 50, 100, 150, 200]
        assert not any(sample.seam for sample in restarts)
        np.testing.assert_array_equal(restarts[0].values, [1.0, 0.0])

    def test_entry_counts(self, plain_settings: CompressionSettings) -> None:
        result = process_stream(_oscillator(201, 0.01), plain_settings)

        assert result.online_entries == 7 * (3 + 2)
        assert result.data_entries == 2 * 201
        assert result.snapshot_count == 201
        assert result.dt == 0.01

    def test_footprint_is_constant(self, plain_settings: CompressionSettings) -> None:
        compressor = StreamCompressor(plain_settings)
        states = _oscillator(201, 0.01)

        compressor.push(states[0])
        first = compressor.footprint
        for state in states[1:]:
            compressor.push(state)

        assert first == compressor.footprint == 35
        assert compressor.count == 201


class TestPodCompression:
    """Window replay, tracked snapshots and mode births."""

    def test_segments_split_at_birth(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        result = process_stream(onset_frames, make_settings())

        assert len(result.epochs) == 1
        epoch = result.epochs[0]
        assert [(s.start, s.end) for s in epoch.problems.segments] == [(0, 29), (30, 59)]
        assert epoch.problems.feature_counts == (4, 5)
        assert epoch.basis is not None
        assert epoch.basis.births == [9, 9, 9, 30]
        assert epoch.basis.activations() == [0, 0, 0, 30]
        assert epoch.n_modes == 4

    def test_restarts_include_seam(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        restarts = process_stream(onset_frames, make_settings()).epochs[0].restarts

        assert [(r.index, r.seam) for r in restarts] == [
            (0, False),
            (20, False),
            (30, True),
            (40, False),
        ]
        assert [r.values.shape for r in restarts] == [(3,), (3,), (4,), (4,)]

    def test_window_replay_matches_batch_system(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        settings = make_settings()
        epoch = process_stream(onset_frames, settings).epochs[0]
        assert epoch.basis is not None
        frames = np.array(onset_frames)
        first, second = epoch.problems.segments

        initial = frames[:30] @ epoch.basis.modes[:, :3]
        b, G = _weak_system(settings, range(30), initial, MonomialBasis(3, 1))
        np.testing.assert_allclose(first.b, b, atol=1e-10)
        np.testing.assert_allclose(first.G, G, atol=1e-10)

        grown = frames[30:] @ epoch.basis.modes
        b, G = _weak_system(settings, range(30, 60), grown, epoch.projection)
        np.testing.assert_allclose(second.b, b, atol=1e-10)
        np.testing.assert_allclose(second.G, G, atol=1e-10)

    def test_entry_count(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        result = process_stream(onset_frames, make_settings())

        assert result.online_entries == 7 * (4 + 5) + 7 * (3 + 4)
        assert result.data_entries == 48 * 60

    def test_nothing_stored_while_collecting(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        compressor = StreamCompressor(make_settings())
        for frame in onset_frames[:9]:
            compressor.push(frame)

        assert compressor.footprint == 0
        assert compressor.projection is None

        compressor.push(onset_frames[9])
        assert compressor.footprint == 7 * (4 + 3)

    def test_residual_trace(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        result = process_stream(onset_frames, make_settings(), record_residuals=True)

        trace = dict(result.residual_trace)
        assert sorted(trace) == list(range(10, 60))
        assert trace[30] == pytest.approx(2.0 / np.sqrt(17.0))
        assert max(value for n, value in trace.items() if n != 30) < 1e-10

    def test_short_stream_initializes_partial_window(
        self,
        make_settings: SettingsFactory,
        onset_frames: list[np.ndarray],
        caplog: pytest.LogCaptureFixture,
    ) -> None:
        with caplog.at_level(logging.WARNING):
            result = process_stream(onset_frames[:5], make_settings())

        assert "pod_short_window" in caplog.messages
        epoch = result.epochs[0]
        assert (epoch.start, epoch.end) == (0, 4)
        assert epoch.basis is not None
        assert epoch.basis.window == 5


class TestReinitialization:
    """A birth past the mode cap starts a fresh epoch."""

    @pytest.fixture()
    def frames(self, onset_modes: list[FieldMode]) -> list[np.ndarray]:
        modes = [*onset_modes, FieldMode((3, 3), "constant", amplitude=2.0, onset=40)]
        return list(synthetic_field(6, 8, 60, 0.1, modes))

    @pytest.fixture()
    def settings(self, make_settings: SettingsFactory) -> CompressionSettings:
        return make_settings(pod={"reinit": {"enabled": True, "mode_cap": 4}})

    def test_epochs_partition_stream(
        self, frames: list[np.ndarray], settings: CompressionSettings
    ) -> None:
        result = process_stream(frames, settings)

        assert [(e.index, e.start, e.end) for e in result.epochs] == [(0, 0, 39), (1, 40, 59)]
        assert result.snapshot_count == 60

    def test_new_epoch_starts_from_fresh_window(
        self, frames: list[np.ndarray], settings: CompressionSettings
    ) -> None:
        first, second = process_stream(frames, settings).epochs

        assert first.basis is not None and second.basis is not None
        assert first.basis.births == [9, 9, 9, 30]
        assert second.basis.births == [49, 49, 49]
        assert second.basis.activations() == [40, 40, 40]
        assert second.basis.residual_threshold == 0.15
        assert [(s.start, s.end) for s in second.problems.segments] == [(40, 59)]
        assert [r.index for r in second.restarts] == [40]
        assert [r.index for r in first.restarts] == [0, 20, 30]


class TestStreamCompressorErrors:
    """Misuse of the compressor."""

    def test_empty_stream(self, make_settings: SettingsFactory) -> None:
        with pytest.raises(ArgumentError):
            process_stream([], make_settings())

    def test_dimension_change(self, make_settings: SettingsFactory) -> None:
        compressor = StreamCompressor(make_settings(pod={"enabled": False}))
        compressor.push(np.ones(3))
        with pytest.raises(InvariantViolationError):
            compressor.push(np.ones(4))

    def test_matrix_snapshot(self, make_settings: SettingsFactory) -> None:
        with pytest.raises(ArgumentError):
            StreamCompressor(make_settings()).push(np.ones((2, 2)))

    def test_push_after_finish(self, make_settings: SettingsFactory) -> None:
        compressor = StreamCompressor(make_settings(pod={"enabled": False}))
        compressor.push(np.ones(2))
        compressor.finish()

        with pytest.raises(StateError):
            compressor.push(np.ones(2))
        with pytest.raises(StateError):
            compressor.finish()


class TestStreamCompressorMetrics:
    def test_reports_snapshots_and_footprint(
        self, make_settings: SettingsFactory, onset_frames: list[np.ndarray]
    ) -> None:
        recorder = MagicMock(spec=NoopMetricsRecorder)

        result = process_stream(onset_frames, make_settings(), metrics=recorder)

        recorder.observe_snapshots.assert_called_once_with(count=60)
        recorder.observe_footprint.assert_called_once_with(
            scope="online", entries=result.online_entries
        )
        recorder.observe_mode_added.assert_called_once_with(epoch=0)
        stages: list[Any] = [call.kwargs["stage"] for call in recorder.observe_stage.call_args_list]
        assert stages.count("online") == 1
        assert "init_svd" in stages
