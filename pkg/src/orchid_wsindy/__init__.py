"""Streaming weak-SINDy compression with streaming POD."""

from orchid_wsindy.codec import (
    CodecError,
    CorruptionError,
    FormatError,
    SizeReport,
    StreamReader,
    StreamWriter,
    offline_report,
    online_report,
    read_archive,
    read_problems,
    read_stream,
    write_archive,
    write_problems,
    write_stream,
)
from orchid_wsindy.config import (
    CompressionSettings,
    ConfigError,
    ConfigFileNotFoundError,
    ConfigValidationError,
    EmptyBasisError,
    FitSettings,
    PlaceholderResolutionError,
    PodSettings,
    load_config,
    load_config_file,
)
from orchid_wsindy.datagen import drifting_band, lorenz, synthetic_field
from orchid_wsindy.observability import (
    MetricsRecorder,
    NoopMetricsRecorder,
    PrometheusMetricsRecorder,
    bootstrap_logging,
    bootstrap_logging_from_settings,
    get_logger,
    run_scope,
)
from orchid_wsindy.pipeline import (
    CompressionResult,
    ProblemSet,
    StreamCompressor,
    SurrogateArchive,
    build,
    compress,
    process_stream,
    solve,
)
from orchid_wsindy.pod import PodBasis, StreamingPod, init_from_window
from orchid_wsindy.reconstruct import (
    SurrogateDecoder,
    SurrogateModel,
    error_metrics,
    evolve,
    synthesize,
)
from orchid_wsindy.runtime import (
    ArgumentError,
    InvariantViolationError,
    MissingDependencyError,
    NumericalError,
    OrchidWsindyError,
    ReconstructionError,
    StateError,
)
from orchid_wsindy.sindy import (
    FourierTestBasis,
    MonomialBasis,
    QuadratureRule,
    SparseCoefficients,
    StreamIntegrator,
    WeakSindyAccumulator,
    static_weak_system,
    stlsq,
)

__all__ = [
    "ArgumentError",
    "CodecError",
    "CompressionResult",
    "CompressionSettings",
    "ConfigError",
    "ConfigFileNotFoundError",
    "ConfigValidationError",
    "CorruptionError",
    "EmptyBasisError",
    "FitSettings",
    "FormatError",
    "FourierTestBasis",
    "InvariantViolationError",
    "MetricsRecorder",
    "MissingDependencyError",
    "MonomialBasis",
    "NoopMetricsRecorder",
    "NumericalError",
    "OrchidWsindyError",
    "PlaceholderResolutionError",
    "PodBasis",
    "PodSettings",
    "ProblemSet",
    "PrometheusMetricsRecorder",
    "QuadratureRule",
    "ReconstructionError",
    "SizeReport",
    "SparseCoefficients",
    "StateError",
    "StreamCompressor",
    "StreamIntegrator",
    "StreamReader",
    "StreamWriter",
    "StreamingPod",
    "SurrogateArchive",
    "SurrogateDecoder",
    "SurrogateModel",
    "WeakSindyAccumulator",
    "bootstrap_logging",
    "bootstrap_logging_from_settings",
    "build",
    "compress",
    "drifting_band",
    "error_metrics",
    "evolve",
    "get_logger",
    "init_from_window",
    "load_config",
    "load_config_file",
    "lorenz",
    "offline_report",
    "online_report",
    "process_stream",
    "read_archive",
    "read_problems",
    "read_stream",
    "run_scope",
    "solve",
    "static_weak_system",
    "stlsq",
    "synthesize",
    "synthetic_field",
    "write_archive",
    "write_problems",
    "write_stream",
]
