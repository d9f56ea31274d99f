"""Storage accounting in stored numbers (entries), not bytes."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from orchid_wsindy.pipeline.archive import SurrogateArchive
from orchid_wsindy.pipeline.online import CompressionResult
from orchid_wsindy.pipeline.problems import ProblemSet
from orchid_wsindy.sindy.accumulator import WeakSindyAccumulator

FEATURES = "features G"
TARGETS = "targets b"
SPATIAL_MODES = "spatial modes"
DENSE_COEFFICIENTS = "coefficients (dense)"
SPARSE_COEFFICIENTS = "coefficients (sparse)"
RESTARTS = "restart samples"
MANIFEST = "manifest (8-byte words)"

Scope = Literal["online", "offline"]


@dataclass(frozen=True, slots=True)
class SizeCategory:
    """One line of a report; ``counted=False`` lines are dense equivalents only."""

    name: str
    entries: int
    counted: bool = True


@dataclass(frozen=True, slots=True)
class SizeReport:
    scope: Scope
    data_entries: int
    categories: tuple[SizeCategory, ...]
    manifest_bytes: int = 0

    @property
    def total(self) -> int:
        return sum(category.entries for category in self.categories if category.counted)

    @property
    def ratio(self) -> float:
        return self.total / self.data_entries if self.data_entries else float("inf")

    @property
    def inefficient(self) -> bool:
        return self.total >= self.data_entries

    def entries(self, name: str) -> int:
        for category in self.categories:
            if category.name == name:
                return category.entries
        raise KeyError(name)

    def rows(self) -> list[list[object]]:
        """Rows ``[category, entries, percent of data]`` for tabular output."""
        rows: list[list[object]] = []
        for category in self.categories:
            label = category.name if category.counted else f"{category.name} *"
            rows.append([label, category.entries, _percent(category.entries, self.data_entries)])
        rows.append([f"total ({self.scope})", self.total, _percent(self.total, self.data_entries)])
        rows.append(["data", self.data_entries, 100.0])
        return rows


def _percent(entries: int, data: int) -> float:
    return 100.0 * entries / data if data else float("inf")


def problem_report(problem_sets: Sequence[ProblemSet], data_entries: int) -> SizeReport:
    return SizeReport(
        scope="online",
        data_entries=data_entries,
        categories=(
            SizeCategory(FEATURES, sum(p.feature_entries for p in problem_sets)),
            SizeCategory(TARGETS, sum(p.target_entries for p in problem_sets)),
        ),
    )


def online_report(result: CompressionResult) -> SizeReport:
    """Frozen problem entries against ``S N``."""
    return problem_report([epoch.problems for epoch in result.epochs], result.data_entries)


def accumulator_report(accumulator: WeakSindyAccumulator, snapshots: int) -> SizeReport:
    """Live ``K (J + S)`` footprint against the ``S n`` values seen so far."""
    return SizeReport(
        scope="online",
        data_entries=accumulator.n_targets * snapshots,
        categories=(
            SizeCategory(FEATURES, int(accumulator.G.size)),
            SizeCategory(TARGETS, int(accumulator.b.size)),
        ),
    )


def offline_report(archive: SurrogateArchive, *, manifest_bytes: int = 0) -> SizeReport:
    """Modes, sparse coefficients, restart samples and manifest against ``S N``.

    The dense coefficient count ``L J`` is listed for comparison but not summed.
    The JSON manifest is counted in 8-byte words so the total covers the whole file.
    """
    modes = sum(e.modes.size for e in archive.epochs if e.modes is not None)
    dense = sum(e.n_modes * e.projection.size for e in archive.epochs)
    sparse = sum(2 * fit.nnz for e in archive.epochs for fit in e.coefficients)
    restarts = sum(e.n_modes * len(e.restarts) for e in archive.epochs)
    categories = [
        SizeCategory(DENSE_COEFFICIENTS, dense, counted=False),
        SizeCategory(SPARSE_COEFFICIENTS, sparse),
        SizeCategory(RESTARTS, restarts),
    ]
    if manifest_bytes:
        categories.append(SizeCategory(MANIFEST, math.ceil(manifest_bytes / 8)))
    if archive.pod_enabled:
        categories.insert(0, SizeCategory(SPATIAL_MODES, modes))
    return SizeReport(
        scope="offline",
        data_entries=archive.state_dim * archive.snapshot_count,
        categories=tuple(categories),
        manifest_bytes=manifest_bytes,
    )
