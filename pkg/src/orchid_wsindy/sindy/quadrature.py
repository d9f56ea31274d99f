"""One-pass composite Newton-Cotes quadrature over uniformly sampled streams.

Panels of ``P`` nodes share their endpoints, so ``N`` snapshots hold
``(N - 1) // (P - 1)`` full panels. A trailing short panel of ``P'' < P`` nodes
is integrated with the degree-``P''`` rule. A single leftover node is only the
shared endpoint of the previous panel and adds nothing.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Generic, Literal, TypeVar

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import newton_cotes

from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError, StateError

T = TypeVar("T")

MAX_DEGREE = 6


@lru_cache(maxsize=None)
def _unit_weights(nodes: int) -> tuple[float, ...]:
    if nodes == 1:
        return (0.0,)
    weights, _ = newton_cotes(nodes - 1, 1)
    return tuple(float(w) for w in weights)


@dataclass(frozen=True, slots=True)
class QuadratureRule:
    """Closed Newton-Cotes rule with ``degree`` nodes per panel and step ``dt``.

    The panel integral is ``alpha * dt * sum(w_p * g_p)`` with ``w_1 = 1``.
    """

    degree: int
    dt: float

    def __post_init__(self) -> None:
        if not 2 <= self.degree <= MAX_DEGREE:
            raise ArgumentError(f"degree must lie in [2, {MAX_DEGREE}], got {self.degree}")
        if not self.dt > 0.0:
            raise ArgumentError(f"dt must be positive, got {self.dt}")

    @property
    def alpha(self) -> float:
        return _unit_weights(self.degree)[0]

    @property
    def weights(self) -> NDArray[np.float64]:
        unit = np.asarray(_unit_weights(self.degree))
        return unit / unit[0]

    def panel_weights(self, nodes: int | None = None) -> NDArray[np.float64]:
        """Per-node weights ``alpha * dt * w`` for a panel of ``nodes`` samples.

        Short panels (``nodes < degree``) get the lower-degree rule.
        """
        nodes = self.degree if nodes is None else nodes
        if not 1 <= nodes <= self.degree:
            raise ArgumentError(f"panel of {nodes} nodes does not fit degree {self.degree}")
        return self.dt * np.asarray(_unit_weights(nodes))


def composite_weights(count: int, rule: QuadratureRule) -> NDArray[np.float64]:
    """Weights of the composite rule over ``count`` uniform samples."""
    if count < 0:
        raise ArgumentError("count must be nonnegative")
    weights = np.zeros(count)
    if count < 2:
        return weights
    step = rule.degree - 1
    full, remainder = divmod(count - 1, step)
    panel = rule.panel_weights()
    for index in range(full):
        weights[index * step : index * step + rule.degree] += panel
    if remainder:
        start = full * step
        weights[start:] += rule.panel_weights(remainder + 1)
    return weights


def batch_integrate(samples: ArrayLike, rule: QuadratureRule) -> NDArray[np.float64]:
    """Composite quadrature over a stored sample array (first axis is time)."""
    stacked = np.asarray(samples, dtype=np.float64)
    if stacked.ndim == 0:
        raise ArgumentError("samples need a leading time axis")
    return np.tensordot(composite_weights(stacked.shape[0], rule), stacked, axes=1)


@dataclass(slots=True)
class PanelScheduler(Generic[T]):
    """Assigns composite-rule weights to items as they stream by.

    Each item is released exactly once, together with its final weight, as
    soon as that weight is known. At most ``degree`` items are held.
    """

    rule: QuadratureRule
    _pending: list[T] = field(default_factory=list)
    _carry_weight: float = 0.0
    _closed: bool = False

    @property
    def held(self) -> int:
        return len(self._pending)

    def push(self, item: T) -> list[tuple[T, float]]:
        if self._closed:
            raise StateError("scheduler already closed")
        self._pending.append(item)
        if len(self._pending) < self.rule.degree:
            return []
        weights = self.rule.panel_weights()
        weights[0] += self._carry_weight
        released = list(zip(self._pending[:-1], weights[:-1].tolist(), strict=True))
        self._carry_weight = float(weights[-1])
        self._pending = [self._pending[-1]]
        return released

    def close(self) -> list[tuple[T, float]]:
        """Release held items; a short trailing panel takes the lower-degree rule."""
        if self._closed:
            raise StateError("scheduler already closed")
        self._closed = True
        pending, self._pending = self._pending, []
        if not pending:
            return []
        if len(pending) == 1:
            return [(pending[0], self._carry_weight)]
        weights = self.rule.panel_weights(len(pending))
        weights[0] += self._carry_weight
        return list(zip(pending, weights.tolist(), strict=True))


@dataclass(slots=True)
class StreamIntegrator:
    """Running integral of a tensor-valued integrand sampled one snapshot at a time.

    Three feeding styles are available and must not be mixed on one integrator:
    ``push`` (per snapshot, any rule), ``trapezoid_update`` (endpoint
    flags) and ``panel_update`` (explicit panels).
    """

    rule: QuadratureRule
    shape: tuple[int, ...]
    value: NDArray[np.float64] = field(init=False)
    count: int = 0
    finalized: bool = False
    _mode: Literal["push", "trapezoid", "panel"] | None = None
    _scheduler: PanelScheduler[NDArray[np.float64]] = field(init=False)
    _last: NDArray[np.float64] | None = None
    _carry: NDArray[np.float64] | None = None

    def __post_init__(self) -> None:
        self.shape = tuple(int(n) for n in self.shape)
        self.value = np.zeros(self.shape)
        self._scheduler = PanelScheduler(self.rule)

    @property
    def nbytes(self) -> int:
        held = self.rule.degree * self.value.nbytes
        return self.value.nbytes + held

    def push(self, sample: ArrayLike) -> StreamIntegrator:
        array = self._accept(sample, "push")
        self.count += 1
        for item, weight in self._scheduler.push(array):
            self.value += weight * item
        return self

    def trapezoid_update(
        self, sample: ArrayLike, *, is_first: bool | None = None, is_last: bool = False
    ) -> StreamIntegrator:
        """Add ``w * sample`` with ``w = dt/2`` at the endpoints and ``dt`` inside.

        ``is_first`` defaults to whether this is the first sample fed. Without
        ``is_last`` the sample is added at full weight and the half is taken back
        by :meth:`finalize`, so the stream length need not be known.
        A stream of one snapshot integrates to zero.
        """
        array = self._accept(sample, "trapezoid")
        dt = self.rule.dt
        if is_first is None:
            is_first = self.count == 0
        if is_first and is_last:
            weight = 0.0
        elif is_first or is_last:
            weight = dt / 2.0
        else:
            weight = dt
        self.value += weight * array
        self.count += 1
        if is_last:
            self._last = None
            self.finalized = True
        else:
            self._last = array
        return self

    def panel_update(self, panel: Sequence[ArrayLike]) -> StreamIntegrator:
        """Integrate one panel of new samples.

        The last node of the previous full panel is prepended automatically, so
        after the first panel callers pass ``degree - 1`` new samples. A panel
        that leaves fewer than ``degree`` nodes is the final short panel and
        finalizes the integrator.
        """
        if len(panel) == 0:
            raise ArgumentError("panel must hold at least one sample")
        arrays = [self._accept(sample, "panel") for sample in panel]
        nodes = ([self._carry] if self._carry is not None else []) + arrays
        if len(nodes) > self.rule.degree:
            raise ArgumentError(
                f"panel of {len(arrays)} samples overflows degree {self.rule.degree}"
            )
        self.count += len(arrays)
        weights = self.rule.panel_weights(len(nodes))
        for node, weight in zip(nodes, weights, strict=True):
            self.value += weight * node
        if len(nodes) == self.rule.degree:
            self._carry = nodes[-1]
        else:
            self._carry = None
            self.finalized = True
        return self

    def finalize(self) -> NDArray[np.float64]:
        if self.finalized:
            return self.value
        if self._mode == "push":
            for item, weight in self._scheduler.close():
                self.value += weight * item
        elif self._mode == "trapezoid" and self._last is not None:
            self.value -= (self.rule.dt / 2.0) * self._last
        self._last = None
        self._carry = None
        self.finalized = True
        return self.value

    def _accept(
        self, sample: ArrayLike, mode: Literal["push", "trapezoid", "panel"]
    ) -> NDArray[np.float64]:
        if self.finalized:
            raise StateError("integrator already finalized")
        if self._mode is None:
            self._mode = mode
        elif self._mode != mode:
            raise StateError(f"integrator fed with {self._mode}; cannot switch to {mode}")
        array = np.asarray(sample, dtype=np.float64)
        if array.shape != self.shape:
            raise InvariantViolationError(
                f"sample shape {array.shape} does not match integrator shape {self.shape}"
            )
        return array
