"""File formats and storage accounting."""

from orchid_wsindy.codec.accounting import (
    SizeCategory,
    SizeReport,
    accumulator_report,
    offline_report,
    online_report,
    problem_report,
)
from orchid_wsindy.codec.errors import CodecError, CorruptionError, FormatError
from orchid_wsindy.codec.problems import read_problems, write_problems
from orchid_wsindy.codec.stream import (
    StreamHeader,
    StreamReader,
    StreamWriter,
    read_stream,
    write_stream,
)
from orchid_wsindy.codec.surrogate import read_archive, write_archive

__all__ = [
    "CodecError",
    "CorruptionError",
    "FormatError",
    "SizeCategory",
    "SizeReport",
    "StreamHeader",
    "StreamReader",
    "StreamWriter",
    "accumulator_report",
    "offline_report",
    "online_report",
    "problem_report",
    "read_archive",
    "read_problems",
    "read_stream",
    "write_archive",
    "write_problems",
    "write_stream",
]
