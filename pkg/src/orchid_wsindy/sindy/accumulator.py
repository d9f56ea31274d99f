"""Streaming accumulation of the weak-form target and feature matrices.

For test functions ``psi_k`` that do not vanish at the interval ends, the
weak derivative picks up boundary terms::

    <du/dt, psi_k> = -<u, dpsi_k/dt> + u(t_N) psi_k(t_N) - u(t_1) psi_k(t_1)

``b`` stores the right-hand side so that ``b ~ G c`` with
``G[k, j] = <phi_j(u), psi_k>``. Neither matrix changes shape while the stream
runs, and the stream length never has to be known in advance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.runtime.errors import ArgumentError, StateError
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.quadrature import PanelScheduler, QuadratureRule, composite_weights


@dataclass(slots=True)
class WeakSindyAccumulator:
    """Running ``(b, G)`` pair for one stream segment."""

    test: FourierTestBasis
    projection: MonomialBasis
    rule: QuadratureRule
    boundary_terms: bool = True
    b: NDArray[np.float64] = field(init=False)
    G: NDArray[np.float64] = field(init=False)
    count: int = 0
    boundary_initialized: bool = False
    frozen: bool = False
    first_time: float | None = None
    last_time: float | None = None
    _last_state: NDArray[np.float64] | None = None
    _scheduler: PanelScheduler[tuple[float, NDArray[np.float64]]] = field(init=False)

    def __post_init__(self) -> None:
        self.b = np.zeros((self.test.size, self.projection.n_vars))
        self.G = np.zeros((self.test.size, self.projection.size))
        self._scheduler = PanelScheduler(self.rule)

    @property
    def n_targets(self) -> int:
        return self.projection.n_vars

    @property
    def entries(self) -> int:
        """Stored numbers ``K (J + S)``."""
        return int(self.b.size + self.G.size)

    @property
    def nbytes(self) -> int:
        scratch = (self.rule.degree + 1) * self.n_targets * 8
        return int(self.b.nbytes + self.G.nbytes + scratch)

    def init_boundary(self, t: float, state: ArrayLike) -> WeakSindyAccumulator:
        """Subtract the lower boundary term ``u(t_1) psi(t_1)``."""
        if self.boundary_initialized or self.count:
            raise StateError("boundary already initialized")
        values = self._check_state(state)
        if self.boundary_terms:
            psi, _ = self.test.evaluate(t)
            self.b -= np.outer(psi, values)
        self.boundary_initialized = True
        return self

    def update(self, t: float, state: ArrayLike, weight: float) -> WeakSindyAccumulator:
        """Add one weighted quadrature node to ``b`` and ``G``."""
        if self.frozen:
            raise StateError("accumulator is frozen")
        values = self._check_state(state)
        self.count += 1
        if weight == 0.0:
            return self
        psi, dpsi = self.test.evaluate(t)
        self.b -= weight * np.outer(dpsi, values)
        self.G += weight * np.outer(psi, self.projection.evaluate(values))
        return self

    def finalize_boundary(self, t: float, state: ArrayLike) -> WeakSindyAccumulator:
        """Add the upper boundary term ``u(t_N) psi(t_N)`` and freeze."""
        if not self.boundary_initialized:
            raise StateError("finalize before boundary initialization")
        if self.frozen:
            raise StateError("accumulator is frozen")
        values = self._check_state(state)
        if self.boundary_terms:
            psi, _ = self.test.evaluate(t)
            self.b += np.outer(psi, values)
        self.frozen = True
        return self

    def push(self, t: float, state: ArrayLike) -> WeakSindyAccumulator:
        """Consume the next snapshot; composite weights come from the rule."""
        if self.frozen:
            raise StateError("accumulator is frozen")
        values = self._check_state(state).copy()
        if self.first_time is None:
            self.init_boundary(t, values)
            self.first_time = t
        for (node_t, node_u), weight in self._scheduler.push((t, values)):
            self.update(node_t, node_u, weight)
        self.last_time = t
        self._last_state = values
        return self

    def close(self) -> WeakSindyAccumulator:
        """Flush held nodes and apply the upper boundary term at the last snapshot."""
        if self.first_time is None or self._last_state is None or self.last_time is None:
            raise StateError("cannot close an accumulator that never saw a snapshot")
        for (node_t, node_u), weight in self._scheduler.close():
            self.update(node_t, node_u, weight)
        return self.finalize_boundary(self.last_time, self._last_state)

    def _check_state(self, state: ArrayLike) -> NDArray[np.float64]:
        values = np.asarray(state, dtype=np.float64)
        if values.shape != (self.n_targets,):
            raise ArgumentError(
                f"state of shape {values.shape} does not match {self.n_targets} targets"
            )
        return values


def static_weak_system(
    times: ArrayLike,
    states: ArrayLike,
    *,
    test: FourierTestBasis,
    projection: MonomialBasis,
    rule: QuadratureRule,
    boundary_terms: bool = True,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Batch ``(b, G)`` over a stored ``(N, S)`` state array."""
    t = np.asarray(times, dtype=np.float64)
    u = np.asarray(states, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != t.shape[0] or u.shape[1] != projection.n_vars:
        raise ArgumentError(f"states {u.shape} do not match times {t.shape}")
    if u.shape[0] == 0:
        raise ArgumentError("at least one snapshot is required")
    weights = composite_weights(u.shape[0], rule)
    psi, dpsi = test.evaluate(t)
    G = (psi * weights) @ projection.evaluate_many(u)
    b = -(dpsi * weights) @ u
    if boundary_terms:
        b += np.outer(psi[:, -1], u[-1]) - np.outer(psi[:, 0], u[0])
    return b, G
