"""Tests for streaming composite Newton-Cotes quadrature."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import trapezoid

from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError, StateError
from orchid_wsindy.sindy.quadrature import (
    PanelScheduler,
    QuadratureRule,
    StreamIntegrator,
    batch_integrate,
    composite_weights,
)


class TestQuadratureRule:
    """Panel weights and validation."""

    def test_trapezoid_weights(self) -> None:
        rule = QuadratureRule(2, 0.1)
        assert rule.alpha == pytest.approx(0.5)
        np.testing.assert_allclose(rule.panel_weights(), [0.05, 0.05])

    def test_simpson_weights_are_normalized_to_first_node(self) -> None:
        rule = QuadratureRule(3, 1.0)
        assert rule.alpha == pytest.approx(1.0 / 3.0)
        np.testing.assert_allclose(rule.weights, [1.0, 4.0, 1.0])

    def test_short_panel_falls_back_to_lower_degree(self) -> None:
        rule = QuadratureRule(4, 1.0)
        np.testing.assert_allclose(rule.panel_weights(2), [0.5, 0.5])
        np.testing.assert_allclose(rule.panel_weights(1), [0.0])

    @pytest.mark.parametrize(("degree", "dt"), [(1, 0.1), (7, 0.1), (2, 0.0), (3, -1.0)])
    def test_invalid_rule(self, degree: int, dt: float) -> None:
        with pytest.raises(ArgumentError):
            QuadratureRule(degree, dt)

    def test_oversized_panel_rejected(self) -> None:
        with pytest.raises(ArgumentError):
            QuadratureRule(3, 0.1).panel_weights(4)


class TestCompositeWeights:
    """Composite rule over a stored grid."""

    def test_simpson_is_exact_for_cubics(self) -> None:
        times = np.linspace(0.0, 1.0, 11)
        rule = QuadratureRule(3, 0.1)
        assert batch_integrate(times**3, rule) == pytest.approx(0.25, abs=1e-14)

    def test_three_eighths_is_exact_for_cubics(self) -> None:
        times = np.linspace(0.0, 0.9, 10)
        rule = QuadratureRule(4, 0.1)
        assert batch_integrate(times**3, rule) == pytest.approx(0.9**4 / 4.0, abs=1e-13)

    def test_trailing_short_panel(self) -> None:
        weights = composite_weights(4, QuadratureRule(3, 1.0))
        np.testing.assert_allclose(weights, [1 / 3, 4 / 3, 1 / 3 + 1 / 2, 1 / 2])

    def test_trapezoid_matches_scipy(self) -> None:
        rng = np.random.default_rng(3)
        samples = rng.standard_normal(37)
        assert batch_integrate(samples, QuadratureRule(2, 0.05)) == pytest.approx(
            trapezoid(samples, dx=0.05)
        )

    @pytest.mark.parametrize("count", [0, 1])
    def test_fewer_than_two_samples_integrate_to_zero(self, count: int) -> None:
        np.testing.assert_array_equal(composite_weights(count, QuadratureRule(3, 0.1)), 0.0)

    def test_tensor_samples(self) -> None:
        samples = np.ones((5, 2, 3))
        result = batch_integrate(samples, QuadratureRule(3, 0.25))
        np.testing.assert_allclose(result, np.ones((2, 3)))


class TestPanelScheduler:
    """Release order and bounded memory."""

    def test_releases_each_item_once_with_composite_weight(self) -> None:
        rule = QuadratureRule(3, 1.0)
        scheduler: PanelScheduler[int] = PanelScheduler(rule)
        released: list[tuple[int, float]] = []
        for index in range(6):
            released.extend(scheduler.push(index))
            assert scheduler.held <= rule.degree
        released.extend(scheduler.close())

        assert [item for item, _ in released] == list(range(6))
        np.testing.assert_allclose([w for _, w in released], composite_weights(6, rule))

    def test_closed_scheduler_rejects_items(self) -> None:
        scheduler: PanelScheduler[int] = PanelScheduler(QuadratureRule(2, 1.0))
        scheduler.close()
        with pytest.raises(StateError):
            scheduler.push(1)


class TestStreamIntegrator:
    """One-pass integration in the three feeding styles."""

    @pytest.mark.parametrize("degree", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("count", [1, 2, 3, 7, 10, 25])
    def test_push_matches_batch(self, degree: int, count: int) -> None:
        rule = QuadratureRule(degree, 0.01)
        samples = np.random.default_rng(count).standard_normal((count, 2))
        integrator = StreamIntegrator(rule, (2,))
        for sample in samples:
            integrator.push(sample)

        np.testing.assert_allclose(
            integrator.finalize(), batch_integrate(samples, rule), rtol=1e-12, atol=1e-15
        )

    def test_trapezoid_update_without_known_length(self) -> None:
        rule = QuadratureRule(2, 0.1)
        samples = np.arange(8.0)
        integrator = StreamIntegrator(rule, ())
        for sample in samples:
            integrator.trapezoid_update(sample)

        assert integrator.finalize() == pytest.approx(trapezoid(samples, dx=0.1))

    def test_trapezoid_update_with_last_flag(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 1.0), ())
        integrator.trapezoid_update(2.0)
        integrator.trapezoid_update(4.0, is_last=True)

        assert integrator.finalized
        assert integrator.finalize() == pytest.approx(3.0)

    def test_single_snapshot_is_zero(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 1.0), ())
        integrator.trapezoid_update(5.0)
        assert integrator.finalize() == 0.0

    def test_first_endpoint_is_inferred(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 1.0), ())
        integrator.trapezoid_update(2.0)
        assert integrator.value == pytest.approx(1.0)

        integrator.trapezoid_update(6.0)
        integrator.trapezoid_update(4.0, is_last=True)
        assert integrator.finalize() == pytest.approx(1.0 + 6.0 + 2.0)

    def test_single_flagged_snapshot_is_zero(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 1.0), ())
        integrator.trapezoid_update(5.0, is_last=True)
        assert integrator.finalize() == 0.0

    def test_panel_update_matches_composite(self) -> None:
        rule = QuadratureRule(3, 0.5)
        samples = np.arange(6.0) ** 2
        integrator = StreamIntegrator(rule, ())
        integrator.panel_update(samples[:3])
        integrator.panel_update(samples[3:5])
        integrator.panel_update(samples[5:])

        assert integrator.finalized
        assert integrator.count == 6
        assert integrator.value == pytest.approx(batch_integrate(samples, rule))

    def test_panel_overflow(self) -> None:
        with pytest.raises(ArgumentError):
            StreamIntegrator(QuadratureRule(3, 0.5), ()).panel_update([1.0, 2.0, 3.0, 4.0])

    def test_feeding_styles_cannot_mix(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 0.1), ())
        integrator.push(1.0)
        with pytest.raises(StateError):
            integrator.trapezoid_update(1.0)

    def test_shape_is_checked(self) -> None:
        with pytest.raises(InvariantViolationError):
            StreamIntegrator(QuadratureRule(2, 0.1), (3,)).push(np.zeros(2))

    def test_finalized_integrator_rejects_samples(self) -> None:
        integrator = StreamIntegrator(QuadratureRule(2, 0.1), ())
        integrator.push(1.0)
        integrator.finalize()
        with pytest.raises(StateError):
            integrator.push(1.0)
