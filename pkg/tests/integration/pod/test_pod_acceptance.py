"""Streaming POD and field compression at desk scale.

Run with:
    pytest tests/integration/pod -m integration
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest
import scipy.linalg

from orchid_wsindy.codec.accounting import offline_report
from orchid_wsindy.config import CompressionSettings
from orchid_wsindy.config.models import PodSettings
from orchid_wsindy.datagen import default_field_modes, drifting_band, synthetic_field
from orchid_wsindy.pipeline import SurrogateArchive, compress, process_stream
from orchid_wsindy.pod import StreamingPod, init_from_window
from orchid_wsindy.pod.basis import truncation_error
from orchid_wsindy.pod.streaming import PodEventKind
from orchid_wsindy.reconstruct import SurrogateDecoder, error_metrics
from orchid_wsindy.reconstruct.synthesis import project_stream

pytestmark = pytest.mark.integration

ConfigLoader = Callable[..., CompressionSettings]

HEIGHT, WIDTH, STEPS, DT, ONSET = 40, 80, 2000, 0.01, 150


def _field(steps: int = STEPS) -> list[np.ndarray]:
    return list(synthetic_field(HEIGHT, WIDTH, steps, DT, default_field_modes(onset=ONSET)))


class TestTruncationIdentity:
    """Criterion 6: discarded energy equals the tail of the squared spectrum."""

    @pytest.mark.parametrize("seed", range(5))
    def test_random_windows(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        window = rng.standard_normal((200, 50)) @ np.diag(np.logspace(0, -3, 50))
        spectrum = scipy.linalg.svdvals(window)
        threshold = float(np.sqrt(spectrum[12] * spectrum[13]))

        basis, kept, _ = init_from_window(window, threshold)

        assert basis.n_modes == kept.size == 13
        discarded = float(np.sum(spectrum[13:] ** 2))
        assert truncation_error(window, basis) == pytest.approx(discarded, rel=1e-8)


class TestOnsetTrigger:
    """Criterion 7: one mode at the onset, exactly captured, orthonormal throughout."""

    def test_single_addition_at_onset(self, shipped_config: ConfigLoader) -> None:
        settings: PodSettings = shipped_config("field").pod
        pod = StreamingPod(settings)
        added: list[int] = []
        drift = 0.0

        for n, frame in enumerate(_field(400)):
            event = pod.push(frame, n)
            if event.kind is PodEventKind.MODE_ADDED:
                added.append(n)
                assert pod.basis is not None
                assert pod.basis.residual(frame) <= 1e-10
            if pod.basis is not None:
                drift = max(drift, pod.basis.drift())

        assert len(added) == 1
        assert ONSET <= added[0] < ONSET + 5
        assert pod.basis is not None and pod.basis.n_modes == 4
        assert drift <= 1e-10


class TestFieldCompression:
    """Criterion 8: end-to-end compression of a 40 x 80 x 2000 field."""

    @pytest.fixture(scope="class")
    def frames(self) -> list[np.ndarray]:
        return _field()

    @pytest.fixture(scope="class")
    def archive(self, frames: list[np.ndarray], shipped_config: ConfigLoader) -> SurrogateArchive:
        return compress(process_stream(frames, shipped_config("field")))

    def test_reconstruction_tracks_projection(
        self, frames: list[np.ndarray], archive: SurrogateArchive
    ) -> None:
        series = error_metrics(
            frames, SurrogateDecoder().decode(archive), project_stream(frames, archive)
        )

        within = series.overall <= series.truncation + 2.0
        assert np.mean(within) >= 0.95

    def test_archive_is_small(self, archive: SurrogateArchive) -> None:
        report = offline_report(archive)

        assert archive.epochs[0].births == (99, 99, 99, ONSET)
        assert report.total <= 0.1 * report.data_entries


class TestReinitialization:
    """Criterion 10: a drifting band outgrows any cap unless reinitialized."""

    @pytest.fixture(scope="class")
    def band(self) -> list[np.ndarray]:
        return list(drifting_band(4, 80, 700, DT))

    def test_unbounded_growth_without_reinit(
        self, band: list[np.ndarray], shipped_config: ConfigLoader
    ) -> None:
        settings = shipped_config("band", pod={"reinit": {"enabled": False}}).pod
        pod = StreamingPod(settings)
        for n, frame in enumerate(band):
            pod.push(frame, n)

        assert pod.basis is not None
        assert pod.basis.n_modes > 30

    def test_reinit_keeps_mode_count_small(
        self, band: list[np.ndarray], shipped_config: ConfigLoader
    ) -> None:
        settings = shipped_config("band")

        result = process_stream(band, settings)

        assert len(result.epochs) > 1
        assert max(epoch.n_modes for epoch in result.epochs) < 10
        assert [epoch.start for epoch in result.epochs][0] == 0
        for left, right in zip(result.epochs, result.epochs[1:]):
            assert right.start == left.end + 1
        assert result.epochs[-1].end == 699
