"""Online compression and offline fitting."""

from orchid_wsindy.pipeline.archive import EpochArchive, RestartSample, SurrogateArchive
from orchid_wsindy.pipeline.offline import SurrogateFitter, compress
from orchid_wsindy.pipeline.online import (
    CompressionResult,
    EpochResult,
    StreamCompressor,
    process_stream,
)
from orchid_wsindy.pipeline.problems import (
    BlockSystem,
    ProblemSegment,
    ProblemSet,
    build,
    solve,
    table_sizes,
)

__all__ = [
    "BlockSystem",
    "CompressionResult",
    "EpochArchive",
    "EpochResult",
    "ProblemSegment",
    "ProblemSet",
    "RestartSample",
    "StreamCompressor",
    "SurrogateArchive",
    "SurrogateFitter",
    "build",
    "compress",
    "process_stream",
    "solve",
    "table_sizes",
]
