"""Tests for the prefix, manifest and array container."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from pydantic import BaseModel

from orchid_wsindy.codec.container import PREFIX_SIZE, read_container, write_container
from orchid_wsindy.codec.errors import CorruptionError, FormatError

MAGIC = b"TEST"


class Body(BaseModel):
    label: str
    count: int


def _write(path: Path, **arrays: np.ndarray) -> int:
    body = Body(label="x", count=2)
    return write_container(path, magic=MAGIC, version=1, body=body, arrays=arrays)


class TestContainer:
    """Layout, round trips and damage detection."""

    def test_prefix_layout(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        length = _write(path, values=np.arange(3.0))
        raw = path.read_bytes()

        assert PREFIX_SIZE == 16
        assert raw[:4] == MAGIC
        assert int.from_bytes(raw[4:8], "little") == 1
        assert int.from_bytes(raw[8:16], "little") == length
        assert raw[16 : 16 + length].startswith(b"{")
        assert len(raw) == 16 + length + 3 * 8

    def test_round_trip(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        floats = np.linspace(0.0, 1.0, 6).reshape(2, 3)
        ints = np.array([3, -1, 7])
        length = _write(path, floats=floats, ints=ints, flags=np.array([True, False]))

        body, arrays, read_length = read_container(path, magic=MAGIC, version=1, body_type=Body)

        assert body == Body(label="x", count=2)
        assert read_length == length
        np.testing.assert_array_equal(arrays["floats"], floats)
        np.testing.assert_array_equal(arrays["ints"], ints)
        assert arrays["ints"].dtype == np.int64
        np.testing.assert_array_equal(arrays["flags"], [1, 0])

    def test_zero_size_arrays(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        _write(path, empty=np.zeros((0, 3)), none=np.zeros(0, dtype=np.int64))

        _, arrays, _ = read_container(path, magic=MAGIC, version=1, body_type=Body)

        assert arrays["empty"].shape == (0, 3)
        assert arrays["none"].dtype == np.int64

    def test_wrong_magic(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        _write(path, values=np.arange(3.0))
        with pytest.raises(FormatError, match="magic"):
            read_container(path, magic=b"ELSE", version=1, body_type=Body)

    def test_wrong_version(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        _write(path, values=np.arange(3.0))
        with pytest.raises(FormatError, match="version"):
            read_container(path, magic=MAGIC, version=2, body_type=Body)

    def test_short_prefix(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        path.write_bytes(b"TEST")
        with pytest.raises(FormatError):
            read_container(path, magic=MAGIC, version=1, body_type=Body)

    def test_truncated_array(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        length = _write(path, first=np.arange(2.0), second=np.arange(4.0))
        path.write_bytes(path.read_bytes()[:-8])

        with pytest.raises(CorruptionError) as excinfo:
            read_container(path, magic=MAGIC, version=1, body_type=Body)

        assert excinfo.value.offset == PREFIX_SIZE + length + 2 * 8

    def test_truncated_manifest(self, tmp_path: Path) -> None:
        path = tmp_path / "c.bin"
        length = _write(path, values=np.arange(3.0))
        path.write_bytes(path.read_bytes()[: PREFIX_SIZE + length // 2])

        with pytest.raises(CorruptionError) as excinfo:
            read_container(path, magic=MAGIC, version=1, body_type=Body)
        assert excinfo.value.offset == PREFIX_SIZE

    def test_body_of_wrong_type(self, tmp_path: Path) -> None:
        class Other(BaseModel):
            missing: float

        path = tmp_path / "c.bin"
        _write(path, values=np.arange(3.0))
        with pytest.raises(FormatError, match="invalid manifest"):
            read_container(path, magic=MAGIC, version=1, body_type=Other)
