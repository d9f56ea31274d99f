"""Intermediate problem files (magic ``SWSP``) between the online and offline passes."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from orchid_wsindy.codec.container import read_container, write_container
from orchid_wsindy.codec.errors import FormatError
from orchid_wsindy.config.models import CompressionSettings
from orchid_wsindy.pipeline.archive import RestartSample
from orchid_wsindy.pipeline.online import CompressionResult, EpochResult
from orchid_wsindy.pipeline.problems import ProblemSegment, ProblemSet
from orchid_wsindy.pod.basis import PodBasis
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError
from orchid_wsindy.sindy.bases import MonomialBasis

PROBLEM_MAGIC = b"SWSP"
PROBLEM_VERSION = 1


class SegmentManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int = Field(ge=0)
    end: int = Field(ge=0)


class BasisManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    births: list[int]
    initial_count: int = Field(ge=1)
    spectral_threshold: float
    residual_threshold: float
    window: int = Field(ge=1)
    start: int = Field(ge=0)


class ProblemEpochManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    projection: dict[str, Any]
    segments: list[SegmentManifest]
    restart_lengths: list[int]
    restart_seams: list[bool]
    basis: BasisManifest | None = None


class ProblemManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    settings: CompressionSettings
    state_dim: int = Field(ge=1)
    snapshot_count: int = Field(ge=1)
    epochs: list[ProblemEpochManifest]


def _key(epoch: int, name: str) -> str:
    return f"epoch{epoch}/{name}"


def write_problems(path: str | Path, result: CompressionResult) -> int:
    """Persist the frozen online problems; returns the manifest length in bytes."""
    arrays: dict[str, NDArray[Any]] = {}
    epochs = []
    for epoch in result.epochs:
        for m, segment in enumerate(epoch.problems.segments):
            arrays[_key(epoch.index, f"segment{m}/b")] = segment.b
            arrays[_key(epoch.index, f"segment{m}/G")] = segment.G
        width = epoch.n_modes
        arrays[_key(epoch.index, "restart_index")] = np.array(
            [sample.index for sample in epoch.restarts], dtype=np.int64
        )
        arrays[_key(epoch.index, "restart_values")] = np.array(
            [sample.padded(width) for sample in epoch.restarts]
        ).reshape(len(epoch.restarts), width)
        basis = None
        if epoch.basis is not None:
            arrays[_key(epoch.index, "modes")] = epoch.basis.modes
            basis = BasisManifest(
                births=list(epoch.basis.births),
                initial_count=epoch.basis.initial_count,
                spectral_threshold=epoch.basis.spectral_threshold,
                residual_threshold=epoch.basis.residual_threshold,
                window=epoch.basis.window,
                start=epoch.basis.start,
            )
        epochs.append(
            ProblemEpochManifest(
                index=epoch.index,
                start=epoch.start,
                end=epoch.end,
                projection=epoch.projection.descriptor(),
                segments=[
                    SegmentManifest(start=s.start, end=s.end) for s in epoch.problems.segments
                ],
                restart_lengths=[int(sample.values.shape[0]) for sample in epoch.restarts],
                restart_seams=[sample.seam for sample in epoch.restarts],
                basis=basis,
            )
        )
    manifest = ProblemManifest(
        settings=result.settings,
        state_dim=result.state_dim,
        snapshot_count=result.snapshot_count,
        epochs=epochs,
    )
    return write_container(
        path, magic=PROBLEM_MAGIC, version=PROBLEM_VERSION, body=manifest, arrays=arrays
    )


def _decode(manifest: ProblemManifest, arrays: dict[str, NDArray[Any]]) -> CompressionResult:
    epochs = []
    for entry in manifest.epochs:
        segments = tuple(
            ProblemSegment(
                b=arrays[_key(entry.index, f"segment{m}/b")],
                G=arrays[_key(entry.index, f"segment{m}/G")],
                start=segment.start,
                end=segment.end,
            )
            for m, segment in enumerate(entry.segments)
        )
        restarts = tuple(
            RestartSample(int(index), row[:length].copy(), seam=seam)
            for index, row, length, seam in zip(
                arrays[_key(entry.index, "restart_index")],
                arrays[_key(entry.index, "restart_values")],
                entry.restart_lengths,
                entry.restart_seams,
                strict=True,
            )
        )
        basis = None
        if entry.basis is not None:
            basis = PodBasis(
                modes=arrays[_key(entry.index, "modes")],
                births=list(entry.basis.births),
                initial_count=entry.basis.initial_count,
                spectral_threshold=entry.basis.spectral_threshold,
                residual_threshold=entry.basis.residual_threshold,
                window=entry.basis.window,
                start=entry.basis.start,
            )
        epochs.append(
            EpochResult(
                index=entry.index,
                start=entry.start,
                end=entry.end,
                problems=ProblemSet(segments),
                projection=MonomialBasis.from_descriptor(entry.projection),
                restarts=restarts,
                basis=basis,
            )
        )
    return CompressionResult(
        settings=manifest.settings,
        epochs=tuple(epochs),
        state_dim=manifest.state_dim,
        snapshot_count=manifest.snapshot_count,
    )


def read_problems(path: str | Path) -> CompressionResult:
    manifest, arrays, _ = read_container(
        path, magic=PROBLEM_MAGIC, version=PROBLEM_VERSION, body_type=ProblemManifest
    )
    try:
        return _decode(manifest, arrays)
    except (ArgumentError, InvariantViolationError, KeyError, ValueError) as exc:
        raise FormatError("read", str(path), f"inconsistent problem file: {exc}") from exc
