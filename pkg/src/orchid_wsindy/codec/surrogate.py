"""Compressed archive files (magic ``SWSA``)."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from orchid_wsindy.codec.container import read_container, write_container
from orchid_wsindy.codec.errors import FormatError
from orchid_wsindy.pipeline.archive import EpochArchive, RestartSample, SurrogateArchive
from orchid_wsindy.runtime.errors import ArgumentError, InvariantViolationError
from orchid_wsindy.sindy.bases import FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.regression import SparseCoefficients

ARCHIVE_MAGIC = b"SWSA"
ARCHIVE_VERSION = 1


class EpochManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    projection: dict[str, Any]
    activations: list[int]
    births: list[int] = Field(default_factory=list)
    feature_counts: list[int] = Field(default_factory=list)
    online_entries: int = Field(default=0, ge=0)
    fit_status: list[Literal["converged", "empty", "max_iterations"]]
    fit_iterations: list[int]
    restart_lengths: list[int]
    restart_seams: list[bool]
    has_modes: bool


class ArchiveManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    writer: str = "orchid-wsindy"
    state_dim: int = Field(ge=1)
    dt: float = Field(gt=0.0)
    snapshot_count: int = Field(ge=1)
    test_functions: dict[str, Any]
    restart_stride: int = Field(ge=1)
    quadrature_degree: int = Field(ge=2)
    pod_enabled: bool
    spectral_threshold: float | None = None
    residual_threshold: float | None = None
    epochs: list[EpochManifest]


def _key(epoch: int, name: str) -> str:
    return f"epoch{epoch}/{name}"


def encode_archive(archive: SurrogateArchive) -> tuple[ArchiveManifest, dict[str, NDArray[Any]]]:
    """Split an archive into its manifest body and named arrays."""
    arrays: dict[str, NDArray[Any]] = {}
    epochs = []
    for epoch in archive.epochs:
        n_modes = epoch.n_modes
        supports = [np.asarray(fit.support, dtype=np.int64) for fit in epoch.coefficients]
        arrays[_key(epoch.index, "support_counts")] = np.array([s.size for s in supports])
        arrays[_key(epoch.index, "support")] = (
            np.concatenate(supports) if supports else np.zeros(0, dtype=np.int64)
        )
        arrays[_key(epoch.index, "values")] = np.concatenate(
            [fit.values[list(fit.support)] for fit in epoch.coefficients]
        )
        arrays[_key(epoch.index, "restart_index")] = np.array(
            [sample.index for sample in epoch.restarts], dtype=np.int64
        )
        arrays[_key(epoch.index, "restart_values")] = np.array(
            [sample.padded(n_modes) for sample in epoch.restarts]
        ).reshape(len(epoch.restarts), n_modes)
        if epoch.modes is not None:
            arrays[_key(epoch.index, "modes")] = epoch.modes
        epochs.append(
            EpochManifest(
                index=epoch.index,
                start=epoch.start,
                end=epoch.end,
                projection=epoch.projection.descriptor(),
                activations=list(epoch.activations),
                births=list(epoch.births),
                feature_counts=list(epoch.feature_counts),
                online_entries=epoch.online_entries,
                fit_status=[fit.status for fit in epoch.coefficients],
                fit_iterations=[fit.iterations for fit in epoch.coefficients],
                restart_lengths=[int(sample.values.shape[0]) for sample in epoch.restarts],
                restart_seams=[sample.seam for sample in epoch.restarts],
                has_modes=epoch.modes is not None,
            )
        )
    manifest = ArchiveManifest(
        state_dim=archive.state_dim,
        dt=archive.dt,
        snapshot_count=archive.snapshot_count,
        test_functions=archive.test.descriptor(),
        restart_stride=archive.restart_stride,
        quadrature_degree=archive.quadrature_degree,
        pod_enabled=archive.pod_enabled,
        spectral_threshold=archive.spectral_threshold,
        residual_threshold=archive.residual_threshold,
        epochs=epochs,
    )
    return manifest, arrays


def decode_archive(manifest: ArchiveManifest, arrays: dict[str, NDArray[Any]]) -> SurrogateArchive:
    epochs = []
    for entry in manifest.epochs:
        projection = MonomialBasis.from_descriptor(entry.projection)
        counts = arrays[_key(entry.index, "support_counts")]
        support = arrays[_key(entry.index, "support")]
        values = arrays[_key(entry.index, "values")]
        bounds = np.concatenate([[0], np.cumsum(counts)])
        if bounds[-1] != support.size or support.size != values.size:
            raise InvariantViolationError("support and value arrays disagree")
        coefficients = []
        for mode in range(projection.n_vars):
            lo, hi = int(bounds[mode]), int(bounds[mode + 1])
            sparse = SparseCoefficients.from_sparse(projection.size, support[lo:hi], values[lo:hi])
            coefficients.append(
                SparseCoefficients(
                    values=sparse.values,
                    support=sparse.support,
                    status=entry.fit_status[mode],
                    iterations=entry.fit_iterations[mode],
                )
            )
        indices = arrays[_key(entry.index, "restart_index")]
        restart_values = arrays[_key(entry.index, "restart_values")]
        restarts = tuple(
            RestartSample(int(index), row[:length].copy(), seam=seam)
            for index, row, length, seam in zip(
                indices, restart_values, entry.restart_lengths, entry.restart_seams, strict=True
            )
        )
        epochs.append(
            EpochArchive(
                index=entry.index,
                start=entry.start,
                end=entry.end,
                projection=projection,
                coefficients=tuple(coefficients),
                restarts=restarts,
                activations=tuple(entry.activations),
                modes=arrays[_key(entry.index, "modes")] if entry.has_modes else None,
                births=tuple(entry.births),
                feature_counts=tuple(entry.feature_counts),
                online_entries=entry.online_entries,
            )
        )
    return SurrogateArchive(
        state_dim=manifest.state_dim,
        dt=manifest.dt,
        snapshot_count=manifest.snapshot_count,
        test=FourierTestBasis.from_descriptor(manifest.test_functions),
        epochs=tuple(epochs),
        restart_stride=manifest.restart_stride,
        quadrature_degree=manifest.quadrature_degree,
        pod_enabled=manifest.pod_enabled,
        spectral_threshold=manifest.spectral_threshold,
        residual_threshold=manifest.residual_threshold,
    )


def write_archive(path: str | Path, archive: SurrogateArchive) -> int:
    """Write ``archive``; returns the manifest length in bytes."""
    manifest, arrays = encode_archive(archive)
    return write_container(
        path, magic=ARCHIVE_MAGIC, version=ARCHIVE_VERSION, body=manifest, arrays=arrays
    )


def read_archive(path: str | Path) -> tuple[SurrogateArchive, int]:
    """Read an archive; returns it with its manifest length in bytes."""
    manifest, arrays, length = read_container(
        path, magic=ARCHIVE_MAGIC, version=ARCHIVE_VERSION, body_type=ArchiveManifest
    )
    try:
        return decode_archive(manifest, arrays), length
    except (ArgumentError, InvariantViolationError, KeyError, IndexError, ValueError) as exc:
        raise FormatError("read", str(path), f"inconsistent archive: {exc}") from exc
