"""Frozen weak-form problems and the lower block-triangular offline system.

Segment ``m`` holds ``b^(m)`` (``K x (L + m)``) and ``G^(m)`` (``K x J_m``).
Stacking the segments gives::

    [ G^(0)       0          0   ]
    [ G^(1)[:J0]  G^(1)[J0:] 0   ]
    [ ...                        ]

Mode ``l`` born in segment ``s`` is fitted against row blocks ``s..M`` only.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from orchid_wsindy.config.models import FitSettings
from orchid_wsindy.observability.logging import get_logger
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError
from orchid_wsindy.sindy.regression import SparseCoefficients, fit_targets

logger = get_logger(__name__)


def table_sizes(n_tests: int, feature_counts: Sequence[int], initial_modes: int) -> tuple[int, int]:
    """Closed-form stored sizes ``(features, targets)`` of a problem set.

    Features ``K (J_0 + ... + J_M)``; targets ``K L (M + 1) + K (M^2 + M) / 2``.
    """
    additions = len(feature_counts) - 1
    features = n_tests * sum(feature_counts)
    targets = n_tests * initial_modes * (additions + 1) + n_tests * (additions**2 + additions) // 2
    return features, targets


@dataclass(frozen=True, slots=True, eq=False)
class ProblemSegment:
    """One frozen ``(b, G)`` pair over snapshots ``start..end`` (inclusive)."""

    b: NDArray[np.float64]
    G: NDArray[np.float64]
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.b.ndim != 2 or self.G.ndim != 2 or self.b.shape[0] != self.G.shape[0]:
            raise InvariantViolationError(
                f"segment targets {self.b.shape} and features {self.G.shape} disagree"
            )
        if self.end < self.start:
            raise InvariantViolationError(f"segment interval [{self.start}, {self.end}] is empty")

    @property
    def n_tests(self) -> int:
        return int(self.G.shape[0])

    @property
    def n_modes(self) -> int:
        return int(self.b.shape[1])

    @property
    def n_features(self) -> int:
        return int(self.G.shape[1])

    @property
    def snapshot_count(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True, slots=True, eq=False)
class ProblemSet:
    """Ordered segments separated by mode additions."""

    segments: tuple[ProblemSegment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        self.validate()

    @property
    def n_tests(self) -> int:
        return self.segments[0].n_tests

    @property
    def initial_modes(self) -> int:
        return self.segments[0].n_modes

    @property
    def final_modes(self) -> int:
        return self.segments[-1].n_modes

    @property
    def additions(self) -> int:
        return len(self.segments) - 1

    @property
    def feature_counts(self) -> tuple[int, ...]:
        return tuple(segment.n_features for segment in self.segments)

    @property
    def start(self) -> int:
        return self.segments[0].start

    @property
    def end(self) -> int:
        return self.segments[-1].end

    @property
    def feature_entries(self) -> int:
        return sum(segment.G.size for segment in self.segments)

    @property
    def target_entries(self) -> int:
        return sum(segment.b.size for segment in self.segments)

    @property
    def total_entries(self) -> int:
        return self.feature_entries + self.target_entries

    def validate(self) -> None:
        if not self.segments:
            raise InvariantViolationError("a problem set needs at least one segment")
        first = self.segments[0]
        for m, segment in enumerate(self.segments):
            if segment.n_tests != first.n_tests:
                raise InvariantViolationError(
                    f"segment {m} has {segment.n_tests} test rows, expected {first.n_tests}"
                )
            if segment.n_modes != first.n_modes + m:
                raise InvariantViolationError(
                    f"segment {m} carries {segment.n_modes} modes, expected {first.n_modes + m}"
                )
        for m, (left, right) in enumerate(zip(self.segments, self.segments[1:]), start=1):
            if right.n_features <= left.n_features:
                raise InvariantViolationError(f"feature count must grow at segment {m}")
            if right.start != left.end + 1:
                raise InvariantViolationError(
                    f"segment {m} starts at {right.start}, previous ended at {left.end}"
                )

    def assert_table_sizes(self) -> None:
        expected = table_sizes(self.n_tests, self.feature_counts, self.initial_modes)
        actual = (self.feature_entries, self.target_entries)
        if actual != expected:
            raise InvariantViolationError(f"stored sizes {actual} differ from {expected}")

    def feature_blocks(self) -> list[tuple[int, int]]:
        """Shapes of the nonzero blocks, column group by column group."""
        counts = (0, *self.feature_counts)
        return [
            (self.n_tests, counts[group + 1] - counts[group])
            for group in range(len(self.segments))
            for _ in range(group, len(self.segments))
        ]

    def birth_segment(self, mode: int) -> int:
        """Segment in which 0-based ``mode`` first appears."""
        if not 0 <= mode < self.final_modes:
            raise ArgumentError(f"mode {mode} outside [0, {self.final_modes})")
        return max(0, mode - self.initial_modes + 1)


@dataclass(frozen=True, slots=True, eq=False)
class BlockSystem:
    """Stacked features ``((M+1) K) x J_M`` and per-mode stacked targets."""

    features: NDArray[np.float64]
    targets: tuple[NDArray[np.float64], ...]
    row_offsets: tuple[int, ...]
    n_tests: int
    feature_counts: tuple[int, ...]

    @property
    def n_modes(self) -> int:
        return len(self.targets)

    def system_for_mode(self, mode: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        offset = self.row_offsets[mode]
        return self.features[offset:], self.targets[mode]

    def upper_blocks_are_zero(self) -> bool:
        for m, count in enumerate(self.feature_counts):
            rows = self.features[m * self.n_tests : (m + 1) * self.n_tests, count:]
            if np.any(rows):
                return False
        return True


def build(problems: ProblemSet) -> BlockSystem:
    """Assemble the block-triangular feature matrix and staggered target stacks."""
    problems.validate()
    n_tests = problems.n_tests
    width = problems.feature_counts[-1]
    features = np.zeros((len(problems.segments) * n_tests, width))
    for m, segment in enumerate(problems.segments):
        features[m * n_tests : (m + 1) * n_tests, : segment.n_features] = segment.G
        if segment.snapshot_count < n_tests:
            logger.warning(
                "short_segment",
                segment=m,
                snapshots=segment.snapshot_count,
                test_functions=n_tests,
            )

    targets = []
    offsets = []
    for mode in range(problems.final_modes):
        born = problems.birth_segment(mode)
        targets.append(np.concatenate([s.b[:, mode] for s in problems.segments[born:]]))
        offsets.append(born * n_tests)

    system = BlockSystem(
        features=features,
        targets=tuple(targets),
        row_offsets=tuple(offsets),
        n_tests=n_tests,
        feature_counts=problems.feature_counts,
    )
    problems.assert_table_sizes()
    return system


def solve(
    system: BlockSystem,
    fits: Sequence[FitSettings],
    *,
    max_workers: int | None = None,
) -> list[SparseCoefficients]:
    """Fit every mode against the row blocks at or after its birth."""
    if len(fits) != system.n_modes:
        raise ArgumentError(f"{len(fits)} fit settings for {system.n_modes} modes")
    systems = [system.system_for_mode(mode) for mode in range(system.n_modes)]
    for mode, (design, _) in enumerate(systems):
        if design.shape[0] < design.shape[1]:
            logger.warning(
                "underdetermined_mode_system",
                mode=mode + 1,
                rows=int(design.shape[0]),
                columns=int(design.shape[1]),
            )
    return fit_targets(systems, fits, max_workers=max_workers)
