"""Tests for percent reconstruction errors."""

from __future__ import annotations

import math

import numpy as np
import pytest

from orchid_wsindy.reconstruct.metrics import component_sup_error, error_metrics
from orchid_wsindy.runtime.errors import ArgumentError


class TestErrorMetrics:
    """Overall, distance, fit and truncation errors."""

    def test_overall_only(self) -> None:
        series = error_metrics([[3.0, 4.0]], [[3.0, 4.5]])

        assert len(series) == 1
        assert series.overall[0] == pytest.approx(10.0)
        assert math.isnan(series.distance[0])
        assert math.isnan(series.truncation[0])

    def test_with_pod_reference(self) -> None:
        series = error_metrics([[3.0, 4.0]], [[3.0, 4.5]], [[3.0, 4.25]])

        assert series.overall[0] == pytest.approx(10.0)
        assert series.truncation[0] == pytest.approx(5.0)
        assert series.fit[0] == pytest.approx(5.0)
        assert series.distance[0] == pytest.approx(100.0 * 0.25 / math.hypot(3.0, 4.25))

    def test_zero_snapshot_is_nan(self) -> None:
        series = error_metrics([[0.0, 0.0], [1.0, 0.0]], [[0.1, 0.0], [1.0, 0.0]])

        assert math.isnan(series.overall[0])
        assert series.overall[1] == 0.0

    def test_rows_table(self) -> None:
        series = error_metrics([[1.0], [2.0], [4.0]], [[1.0], [2.2], [4.0]])

        rows = series.rows()
        assert rows.shape == (3, 5)
        np.testing.assert_array_equal(rows[:, 0], [0.0, 1.0, 2.0])
        assert rows[1, 1] == pytest.approx(10.0)

    def test_length_mismatch(self) -> None:
        with pytest.raises(ArgumentError, match="lengths"):
            error_metrics([[1.0], [2.0]], [[1.0]])

    def test_shape_mismatch(self) -> None:
        with pytest.raises(ArgumentError, match="snapshot 0"):
            error_metrics([[1.0, 2.0]], [[1.0]])

    def test_accepts_generators(self) -> None:
        truth = (np.ones(3) * n for n in range(1, 4))
        approx = (np.ones(3) * n * 1.01 for n in range(1, 4))

        series = error_metrics(truth, approx)

        np.testing.assert_allclose(series.overall, 1.0)


class TestComponentSupError:
    def test_per_component_percent(self) -> None:
        truth = np.array([[1.0, 0.0], [2.0, 0.0]])
        approx = np.array([[1.1, 0.0], [2.0, 0.5]])

        errors = component_sup_error(truth, approx)

        assert errors[0] == pytest.approx(5.0)
        assert math.isnan(errors[1])

    def test_shape_mismatch(self) -> None:
        with pytest.raises(ArgumentError):
            component_sup_error(np.zeros((3, 2)), np.zeros((2, 2)))
