"""Projection (monomial) and test (Fourier) bases."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from math import comb
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.runtime.errors import ArgumentError

DegreePolicy = Literal["total", "max"]

# Relative slack on the right end of [0, T] for times built as n * dt.
_HORIZON_SLACK = 1e-9


def _order_key(exponents: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # Degree first, then descending lexicographic: u1 before u2, u1*u2 before u1*u3.
    return sum(exponents), tuple(-e for e in exponents)


def _admissible(exponents: tuple[int, ...], policy: DegreePolicy, degree: int) -> bool:
    if policy == "total":
        return sum(exponents) <= degree
    return max(exponents, default=0) <= degree


def _exponent_tuples(
    n_vars: int, policy: DegreePolicy, degree: int, budget: int | None = None
) -> Iterator[tuple[int, ...]]:
    if n_vars == 0:
        yield ()
        return
    limit = degree if budget is None or policy == "max" else budget
    for head in range(limit + 1):
        remaining = None if policy == "max" else limit - head
        for tail in _exponent_tuples(n_vars - 1, policy, degree, remaining):
            yield (head, *tail)


@dataclass(frozen=True, slots=True, eq=False)
class MonomialBasis:
    """Multivariate monomials ``phi_j(u) = prod_i u_i ** e_ji``.

    Columns of a fresh basis are ordered by total degree, then in descending
    lexicographic order of the exponent tuple. :meth:`extend` appends the new
    monomials after the existing ones so earlier column indices never move.
    """

    n_vars: int
    degree: int
    policy: DegreePolicy = "total"
    exponents: NDArray[np.int64] = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise ArgumentError(f"n_vars must be positive, got {self.n_vars}")
        if self.degree < 1:
            raise ArgumentError(f"degree must be positive, got {self.degree}")
        if self.policy not in ("total", "max"):
            raise ArgumentError(f"unknown degree policy {self.policy!r}")
        if self.exponents is None:
            table = sorted(_exponent_tuples(self.n_vars, self.policy, self.degree), key=_order_key)
            exponents = np.asarray(table, dtype=np.int64)
        else:
            exponents = np.asarray(self.exponents, dtype=np.int64)
            self._check_table(exponents)
        exponents.setflags(write=False)
        object.__setattr__(self, "exponents", exponents)

    @property
    def size(self) -> int:
        return int(self.exponents.shape[0])

    def expected_size(self) -> int:
        """Closed-form count for a fresh basis: C(d+R, R) or (R+1)^d."""
        if self.policy == "total":
            return comb(self.n_vars + self.degree, self.degree)
        return (self.degree + 1) ** self.n_vars

    def evaluate(self, state: ArrayLike) -> NDArray[np.float64]:
        """Return ``[phi_1(state), ..., phi_J(state)]``."""
        values = np.asarray(state, dtype=np.float64)
        if values.shape != (self.n_vars,):
            raise ArgumentError(
                f"state of shape {values.shape} does not match {self.n_vars} variables"
            )
        return np.prod(values[np.newaxis, :] ** self.exponents, axis=1)

    def evaluate_many(self, states: ArrayLike) -> NDArray[np.float64]:
        """Evaluate rows of an ``(N, d)`` array, returning ``(N, J)``."""
        values = np.asarray(states, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != self.n_vars:
            raise ArgumentError(
                f"states of shape {values.shape} do not match {self.n_vars} variables"
            )
        return np.prod(values[:, np.newaxis, :] ** self.exponents[np.newaxis, :, :], axis=2)

    def extend(self, new_dim: int) -> MonomialBasis:
        """Add variable ``new_dim`` (must be ``n_vars + 1``) under the same policy."""
        if new_dim != self.n_vars + 1:
            raise ArgumentError(
                f"basis over {self.n_vars} variables extends to {self.n_vars + 1}, not {new_dim}"
            )
        carried = np.hstack([self.exponents, np.zeros((self.size, 1), dtype=np.int64)])
        fresh = sorted(
            (e for e in _exponent_tuples(new_dim, self.policy, self.degree) if e[-1] > 0),
            key=_order_key,
        )
        table = np.vstack([carried, np.asarray(fresh, dtype=np.int64).reshape(-1, new_dim)])
        return MonomialBasis(new_dim, self.degree, self.policy, table)

    def labels(self, names: Sequence[str] | None = None) -> list[str]:
        """Readable monomial labels such as ``1``, ``u1``, ``u1^2 u3``."""
        if names is None:
            names = [f"u{i + 1}" for i in range(self.n_vars)]
        labels = []
        for row in self.exponents:
            parts = [
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(names, row, strict=True)
                if power
            ]
            labels.append(" ".join(parts) or "1")
        return labels

    def descriptor(self) -> dict[str, Any]:
        return {
            "kind": "monomial",
            "n_vars": self.n_vars,
            "degree": self.degree,
            "policy": self.policy,
            "exponents": self.exponents.tolist(),
        }

    @classmethod
    def from_descriptor(cls, descriptor: dict[str, Any]) -> MonomialBasis:
        if descriptor.get("kind") != "monomial":
            raise ArgumentError(f"not a monomial descriptor: {descriptor.get('kind')!r}")
        return cls(
            n_vars=int(descriptor["n_vars"]),
            degree=int(descriptor["degree"]),
            policy=descriptor["policy"],
            exponents=np.asarray(descriptor["exponents"], dtype=np.int64),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialBasis):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and self.degree == other.degree
            and self.policy == other.policy
            and np.array_equal(self.exponents, other.exponents)
        )

    __hash__ = None  # type: ignore[assignment]

    def _check_table(self, exponents: NDArray[np.int64]) -> None:
        if exponents.ndim != 2 or exponents.shape[1] != self.n_vars:
            raise ArgumentError(f"exponent table of shape {exponents.shape} is malformed")
        if (exponents < 0).any():
            raise ArgumentError("exponents must be nonnegative")
        rows = {tuple(row) for row in exponents.tolist()}
        if len(rows) != exponents.shape[0]:
            raise ArgumentError("exponent tuples must be unique")
        if not all(_admissible(row, self.policy, self.degree) for row in rows):
            raise ArgumentError(f"exponent table violates {self.policy}-degree {self.degree}")


@dataclass(frozen=True, slots=True)
class FourierTestBasis:
    """L2-orthonormal Fourier family on ``[0, length]``.

    Members are ordered sines ``k = 1..K~``, cosines ``k = 1..K~``, then the
    constant ``1/sqrt(T)``; ``K = 2 K~ + 1``.
    """

    half_count: int
    length: float
    _frequencies: NDArray[np.float64] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.half_count < 1:
            raise ArgumentError(f"half_count must be positive, got {self.half_count}")
        if not self.length > 0.0:
            raise ArgumentError(f"length must be positive, got {self.length}")
        frequencies = 2.0 * np.pi * np.arange(1, self.half_count + 1) / self.length
        object.__setattr__(self, "_frequencies", frequencies)

    @property
    def size(self) -> int:
        return 2 * self.half_count + 1

    def evaluate(self, t: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Return ``(psi(t), dpsi/dt(t))``, each shaped ``(K,)`` or ``(K, n)``."""
        times = np.asarray(t, dtype=np.float64)
        slack = _HORIZON_SLACK * self.length
        if times.size and (times.min() < -slack or times.max() > self.length + slack):
            raise ArgumentError(f"time outside the test interval [0, {self.length}]")
        scale = np.sqrt(2.0 / self.length)
        omega = self._frequencies.reshape((-1,) + (1,) * times.ndim)
        phase = omega * times
        sines, cosines = np.sin(phase), np.cos(phase)
        constant = np.full((1, *times.shape), 1.0 / np.sqrt(self.length))
        values = np.concatenate([scale * sines, scale * cosines, constant])
        derivatives = np.concatenate(
            [scale * omega * cosines, -scale * omega * sines, np.zeros_like(constant)]
        )
        return values, derivatives

    def descriptor(self) -> dict[str, Any]:
        return {"kind": "fourier", "half_count": self.half_count, "length": self.length}

    @classmethod
    def from_descriptor(cls, descriptor: dict[str, Any]) -> FourierTestBasis:
        if descriptor.get("kind") != "fourier":
            raise ArgumentError(f"not a Fourier descriptor: {descriptor.get('kind')!r}")
        return cls(int(descriptor["half_count"]), float(descriptor["length"]))
