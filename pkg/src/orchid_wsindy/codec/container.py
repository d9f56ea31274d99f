"""Single-file container: prefix, JSON manifest, then raw little-endian arrays.

Layout::

    0   4  magic
    4   4  u32 version
    8   8  u64 manifest length M
    16  M  UTF-8 JSON manifest {"arrays": {...}, "body": {...}}
    16+M   data section; array offsets are relative to its start
"""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal, TypeVar

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from orchid_wsindy.codec.errors import CorruptionError, FormatError

PREFIX_DTYPE = np.dtype([("magic", "S4"), ("version", "<u4"), ("manifest_length", "<u8")])
PREFIX_SIZE = PREFIX_DTYPE.itemsize

_NATIVE_DTYPES: dict[str, type[np.generic]] = {"<f8": np.float64, "<i8": np.int64}

BodyT = TypeVar("BodyT", bound=BaseModel)


class ArraySpec(BaseModel):
    """Position and shape of one array in the data section."""

    model_config = ConfigDict(frozen=True)

    offset: int = Field(ge=0)
    shape: tuple[int, ...]
    dtype: Literal["<f8", "<i8"]

    @property
    def count(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    @property
    def nbytes(self) -> int:
        return self.count * 8


class ContainerManifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    arrays: dict[str, ArraySpec] = Field(default_factory=dict)
    body: dict[str, Any] = Field(default_factory=dict)


def _normalize(values: ArrayLike) -> NDArray[Any]:
    array = np.asarray(values)
    dtype = "<i8" if array.dtype.kind in "iub" else "<f8"
    return np.ascontiguousarray(array, dtype=dtype)


def write_container(
    path: str | Path,
    *,
    magic: bytes,
    version: int,
    body: BaseModel,
    arrays: Mapping[str, ArrayLike],
) -> int:
    """Write a container and return the manifest length in bytes."""
    payloads = {name: _normalize(values) for name, values in arrays.items()}
    specs = {}
    offset = 0
    for name, array in payloads.items():
        dtype = "<i8" if array.dtype.kind == "i" else "<f8"
        specs[name] = ArraySpec(offset=offset, shape=array.shape, dtype=dtype)
        offset += array.nbytes
    manifest = ContainerManifest(arrays=specs, body=body.model_dump(mode="json"))
    encoded = manifest.model_dump_json().encode("utf-8")
    prefix = np.array([(magic, version, len(encoded))], dtype=PREFIX_DTYPE)
    with Path(path).open("wb") as handle:
        handle.write(prefix.tobytes())
        handle.write(encoded)
        for array in payloads.values():
            handle.write(array.tobytes())
    return len(encoded)


def read_container(
    path: str | Path,
    *,
    magic: bytes,
    version: int,
    body_type: type[BodyT],
) -> tuple[BodyT, dict[str, NDArray[Any]], int]:
    """Return ``(body, arrays, manifest_length)``."""
    location = str(path)
    raw = Path(path).read_bytes()
    if len(raw) < PREFIX_SIZE:
        raise FormatError("read", location, f"prefix needs {PREFIX_SIZE} bytes, found {len(raw)}")
    prefix = np.frombuffer(raw[:PREFIX_SIZE], dtype=PREFIX_DTYPE)[0]
    if bytes(prefix["magic"]) != magic:
        raise FormatError("read", location, f"bad magic {bytes(prefix['magic'])!r}")
    if int(prefix["version"]) != version:
        raise FormatError("read", location, f"unsupported version {int(prefix['version'])}")
    length = int(prefix["manifest_length"])
    data_start = PREFIX_SIZE + length
    if data_start > len(raw):
        raise CorruptionError(
            "read", location, "manifest runs past end of file", offset=PREFIX_SIZE
        )
    try:
        manifest = ContainerManifest.model_validate_json(raw[PREFIX_SIZE:data_start])
        body = body_type.model_validate(manifest.body)
    except ValidationError as exc:
        raise FormatError("read", location, f"invalid manifest: {exc}") from exc

    arrays: dict[str, NDArray[Any]] = {}
    for name, spec in manifest.arrays.items():
        begin = data_start + spec.offset
        if begin + spec.nbytes > len(raw):
            raise CorruptionError(
                "read", location, f"array {name!r} runs past end of file", offset=begin
            )
        native = _NATIVE_DTYPES[spec.dtype]
        if spec.count == 0:
            arrays[name] = np.zeros(spec.shape, dtype=native)
            continue
        flat = np.frombuffer(raw, dtype=spec.dtype, count=spec.count, offset=begin)
        arrays[name] = flat.reshape(spec.shape).astype(native)
    return body, arrays, length
