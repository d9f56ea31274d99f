"""Lorenz compression without POD, on ``[0, 10]`` with the shipped settings.

Run with:
    pytest tests/integration/lorenz -m integration
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from orchid_wsindy.codec.accounting import (
    DENSE_COEFFICIENTS,
    FEATURES,
    SPARSE_COEFFICIENTS,
    TARGETS,
    offline_report,
    online_report,
)
from orchid_wsindy.config import CompressionSettings
from orchid_wsindy.datagen import lorenz
from orchid_wsindy.pipeline import CompressionResult, SurrogateArchive, compress, process_stream
from orchid_wsindy.pipeline.archive import EpochArchive
from orchid_wsindy.reconstruct import SurrogateDecoder
from orchid_wsindy.reconstruct.metrics import component_sup_error
from orchid_wsindy.reconstruct.model import SurrogateModel, reconstruct_temporal
from orchid_wsindy.sindy.accumulator import static_weak_system
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.quadrature import QuadratureRule
from orchid_wsindy.sindy.regression import stlsq

pytestmark = pytest.mark.integration

ConfigLoader = Callable[..., CompressionSettings]

# Projection order: 1, u1, u2, u3, u1u2, u1u3, u2u3, u1u2u3
EXPECTED_SUPPORT = [(1, 2), (1, 2, 5), (3, 4)]
EXPECTED_VALUES = [(-10.0, 10.0), (28.0, -1.0, -1.0), (-8.0 / 3.0, 1.0)]


@pytest.fixture(scope="module")
def settings(shipped_config: ConfigLoader) -> CompressionSettings:
    return shipped_config("lorenz")


@pytest.fixture(scope="module")
def result(settings: CompressionSettings, lorenz_trajectory: np.ndarray) -> CompressionResult:
    return process_stream(lorenz_trajectory, settings)


@pytest.fixture(scope="module")
def archive(result: CompressionResult) -> SurrogateArchive:
    return compress(result)


class TestStreamingMatchesStatic:
    """Criterion 1: the one-pass accumulator reproduces the batch weak system."""

    def test_matrices_agree(
        self,
        settings: CompressionSettings,
        result: CompressionResult,
        lorenz_trajectory: np.ndarray,
    ) -> None:
        (segment,) = result.epochs[0].problems.segments
        times = np.arange(lorenz_trajectory.shape[0]) * settings.stream.dt
        b, G = static_weak_system(
            times,
            lorenz_trajectory,
            test=FourierTestBasis(20, 10.0),
            projection=MonomialBasis(3, 1, "max"),
            rule=QuadratureRule(2, settings.stream.dt),
        )

        assert G.shape == (41, 8)
        assert np.linalg.norm(segment.G - G) <= 1e-10 * np.linalg.norm(G)
        assert np.linalg.norm(segment.b - b) <= 1e-10 * np.linalg.norm(b)

    def test_trajectories_agree(
        self,
        settings: CompressionSettings,
        archive: SurrogateArchive,
        lorenz_trajectory: np.ndarray,
    ) -> None:
        streaming = archive.epochs[0]
        times = np.arange(lorenz_trajectory.shape[0]) * settings.stream.dt
        b, G = static_weak_system(
            times,
            lorenz_trajectory,
            test=archive.test,
            projection=streaming.projection,
            rule=QuadratureRule(2, settings.stream.dt),
        )
        fit = settings.fitting.default
        static = EpochArchive(
            index=0,
            start=streaming.start,
            end=streaming.end,
            projection=streaming.projection,
            coefficients=tuple(stlsq(G, b[:, s], fit) for s in range(3)),
            restarts=streaming.restarts,
            activations=streaming.activations,
        )

        from_stream = reconstruct_temporal(SurrogateModel.from_epoch(streaming, archive.dt))
        from_static = reconstruct_temporal(SurrogateModel.from_epoch(static, archive.dt))

        difference = np.abs(from_stream - from_static).sum(axis=1)
        assert np.max(difference / np.abs(from_static).sum(axis=1)) < 0.01


class TestCoefficientRecovery:
    """Criterion 2: sparse recovery of the Lorenz right-hand side."""

    def test_supports_and_values(self, archive: SurrogateArchive) -> None:
        coefficients = archive.epochs[0].coefficients

        assert [fit.support for fit in coefficients] == EXPECTED_SUPPORT
        expectations = zip(coefficients, EXPECTED_SUPPORT, EXPECTED_VALUES, strict=True)
        for fit, support, expected in expectations:
            np.testing.assert_allclose(fit.values[list(support)], expected, rtol=0.01)


class TestStorageAccounting:
    """Criterion 3: entry counts for the Lorenz run."""

    def test_online_entries(self, result: CompressionResult) -> None:
        report = online_report(result)

        assert report.entries(FEATURES) == 41 * 8
        assert report.entries(TARGETS) == 41 * 3
        assert report.data_entries == 3 * 10_001

    def test_offline_entries(self, archive: SurrogateArchive) -> None:
        report = offline_report(archive)

        assert report.entries(DENSE_COEFFICIENTS) == 8 * 3
        assert report.entries(SPARSE_COEFFICIENTS) == 2 * 7
        assert report.total < report.data_entries // 100


class TestErrorTrend:
    """Criterion 4: finer sampling of ``[0, 10]`` lowers the sup-norm error."""

    def test_more_snapshots_reduce_error(
        self,
        shipped_config: ConfigLoader,
        archive: SurrogateArchive,
        lorenz_trajectory: np.ndarray,
    ) -> None:
        coarse_settings = shipped_config("lorenz", stream={"dt": 0.005, "restart_stride": 200})
        coarse_truth = lorenz(2001, 0.005)
        coarse = compress(process_stream(coarse_truth, coarse_settings))

        decoder = SurrogateDecoder()
        fine_error = component_sup_error(lorenz_trajectory, np.array(list(decoder.decode(archive))))
        coarse_error = component_sup_error(coarse_truth, np.array(list(decoder.decode(coarse))))

        assert np.all(fine_error < coarse_error)
