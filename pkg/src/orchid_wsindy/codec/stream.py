"""Snapshot-stream files: a 24-byte header followed by raw frames.

Layout (little-endian)::

    0   4  magic "SWSY"
    4   4  u32 version (1)
    8   8  u64 state dimension S
    16  8  f64 time step
    24  .. frames of S f64 values until end of file
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from types import TracebackType
from typing import BinaryIO

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orchid_wsindy.codec.errors import CorruptionError, FormatError
from orchid_wsindy.runtime.errors import ArgumentError, StateError

STREAM_MAGIC = b"SWSY"
STREAM_VERSION = 1
HEADER_DTYPE = np.dtype(
    [("magic", "S4"), ("version", "<u4"), ("state_dim", "<u8"), ("dt", "<f8")]
)
HEADER_SIZE = HEADER_DTYPE.itemsize
FRAME_DTYPE = np.dtype("<f8")


@dataclass(frozen=True, slots=True)
class StreamHeader:
    state_dim: int
    dt: float
    version: int = STREAM_VERSION

    @property
    def frame_bytes(self) -> int:
        return self.state_dim * FRAME_DTYPE.itemsize

    def encode(self) -> bytes:
        record = np.array(
            [(STREAM_MAGIC, self.version, self.state_dim, self.dt)], dtype=HEADER_DTYPE
        )
        return record.tobytes()

    @classmethod
    def decode(cls, raw: bytes, *, path: str | None = None) -> StreamHeader:
        if len(raw) < HEADER_SIZE:
            raise FormatError("read", path, f"header needs {HEADER_SIZE} bytes, found {len(raw)}")
        record = np.frombuffer(raw[:HEADER_SIZE], dtype=HEADER_DTYPE)[0]
        if bytes(record["magic"]) != STREAM_MAGIC:
            raise FormatError("read", path, f"bad magic {bytes(record['magic'])!r}")
        version = int(record["version"])
        if version != STREAM_VERSION:
            raise FormatError("read", path, f"unsupported stream version {version}")
        state_dim = int(record["state_dim"])
        dt = float(record["dt"])
        if state_dim < 1:
            raise FormatError("read", path, "state dimension must be positive")
        if not (math.isfinite(dt) and dt > 0.0):
            raise FormatError("read", path, f"invalid time step {dt!r}")
        return cls(state_dim=state_dim, dt=dt, version=version)


class StreamWriter:
    """Append frames to a snapshot-stream file.

    Example usage:
        with StreamWriter("run.swsy", state_dim=3, dt=0.001) as writer:
            for frame in frames:
                writer.write(frame)
    """

    def __init__(self, path: str | Path, *, state_dim: int, dt: float) -> None:
        if state_dim < 1:
            raise ArgumentError(f"state dimension must be positive, got {state_dim}")
        if not (math.isfinite(dt) and dt > 0.0):
            raise ArgumentError(f"time step must be positive, got {dt}")
        self._path = Path(path)
        self.header = StreamHeader(state_dim=state_dim, dt=dt)
        self._handle: BinaryIO | None = self._path.open("wb")
        self._handle.write(self.header.encode())
        self.count = 0

    def write(self, frame: ArrayLike) -> None:
        if self._handle is None:
            raise StateError("stream writer is closed")
        values = np.asarray(frame, dtype=FRAME_DTYPE)
        if values.shape != (self.header.state_dim,):
            raise ArgumentError(
                f"frame of shape {values.shape} does not match "
                f"state dimension {self.header.state_dim}"
            )
        self._handle.write(values.tobytes())
        self.count += 1

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self) -> StreamWriter:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        self.close()


class StreamReader:
    """Lazy frame iterator over a snapshot-stream file."""

    def __init__(self, path: str | Path) -> None:
        self._path = Path(path)
        with self._path.open("rb") as handle:
            self.header = StreamHeader.decode(handle.read(HEADER_SIZE), path=str(self._path))

    @property
    def path(self) -> Path:
        return self._path

    @property
    def state_dim(self) -> int:
        return self.header.state_dim

    @property
    def dt(self) -> float:
        return self.header.dt

    @property
    def frame_count(self) -> int:
        """Complete frames in the file."""
        payload = self._path.stat().st_size - HEADER_SIZE
        return max(payload, 0) // self.header.frame_bytes

    def __iter__(self) -> Iterator[NDArray[np.float64]]:
        size = self.header.frame_bytes
        with self._path.open("rb") as handle:
            handle.seek(HEADER_SIZE)
            offset = HEADER_SIZE
            while chunk := handle.read(size):
                if len(chunk) < size:
                    raise CorruptionError(
                        "read",
                        str(self._path),
                        f"final frame holds {len(chunk)} of {size} bytes",
                        offset=offset,
                    )
                yield np.frombuffer(chunk, dtype=FRAME_DTYPE).astype(np.float64)
                offset += size

    def read_all(self) -> NDArray[np.float64]:
        """Every frame as an ``(N, S)`` array."""
        frames = list(self)
        if not frames:
            return np.zeros((0, self.state_dim))
        return np.vstack(frames)


def write_stream(
    path: str | Path,
    frames: Iterable[ArrayLike],
    *,
    dt: float,
    state_dim: int | None = None,
) -> int:
    """Write ``frames`` and return how many were written."""
    iterator = iter(frames)
    first = None
    if state_dim is None:
        first = next(iterator, None)
        if first is None:
            raise ArgumentError("state_dim is required for an empty stream")
        state_dim = int(np.asarray(first).shape[0])
    with StreamWriter(path, state_dim=state_dim, dt=dt) as writer:
        if first is not None:
            writer.write(first)
        for frame in iterator:
            writer.write(frame)
        return writer.count


def read_stream(path: str | Path) -> StreamReader:
    return StreamReader(path)
