"""Command-line front end.

Usage:
    orchid-wsindy gen lorenz -o lorenz.swsy
    orchid-wsindy compress lorenz.swsy -o lorenz.arc --config config/lorenz.json
    orchid-wsindy decompress lorenz.arc -o lorenz.out.swsy
    orchid-wsindy report lorenz.arc --truth lorenz.swsy --csv lorenz.metrics.csv

Exit codes: 0 success, 2 format/corrupt input, 3 numerical failure,
4 configuration error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import numpy as np
from tabulate import tabulate

from orchid_wsindy.codec import (
    CodecError,
    offline_report,
    online_report,
    read_archive,
    read_problems,
    read_stream,
    write_archive,
    write_problems,
    write_stream,
)
from orchid_wsindy.config import CompressionSettings, ConfigError, ServiceSettings, load_config_file
from orchid_wsindy.datagen import (
    DEFAULT_INITIAL_STATE,
    default_field_modes,
    drifting_band,
    lorenz,
    synthetic_field,
)
from orchid_wsindy.observability import (
    bootstrap_logging,
    bootstrap_logging_from_settings,
    configure_prometheus_metrics,
    get_logger,
    new_run_id,
    run_scope,
    start_prometheus_http_server,
)
from orchid_wsindy.pipeline import SurrogateArchive, compress, process_stream
from orchid_wsindy.reconstruct import SurrogateDecoder, error_metrics, project_stream
from orchid_wsindy.runtime.errors import (
    ArgumentError,
    InvariantViolationError,
    NumericalError,
    OrchidWsindyError,
)
from orchid_wsindy.sindy import render_equations

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_NUMERICAL = 3
EXIT_CONFIG = 4

# Relative slack when comparing the stream span with the configured horizon.
_HORIZON_SLACK = 1e-9


def _load_settings(args: argparse.Namespace, *, dt: float) -> CompressionSettings:
    overrides: dict[str, dict[str, float]] = {"stream": {"dt": dt}}
    if args.horizon is not None:
        overrides["stream"]["horizon"] = args.horizon
    settings = load_config_file(args.config, env=args.env, overrides=overrides)
    bootstrap_logging_from_settings(settings, env=args.env, level=args.log_level, stream=sys.stderr)
    observability = settings.observability
    if observability.metrics_enabled:
        configure_prometheus_metrics(prefix=observability.metrics_prefix)
        if observability.prometheus_port is not None:
            start_prometheus_http_server(port=observability.prometheus_port)
    return settings


def _print_table(title: str, rows: Sequence[Sequence[object]], headers: Sequence[str]) -> None:
    print(title)
    print(tabulate(rows, headers=headers, tablefmt="github", floatfmt=".4g"))
    print()


def _epoch_rows(archive: SurrogateArchive) -> list[list[object]]:
    return [
        [
            epoch.index,
            epoch.start,
            epoch.end,
            epoch.n_modes,
            epoch.projection.size,
            sum(fit.nnz for fit in epoch.coefficients),
            len(epoch.restarts),
        ]
        for epoch in archive.epochs
    ]


_EPOCH_HEADERS = ("epoch", "start", "end", "modes", "features", "nonzeros", "restarts")


def _cmd_compress(args: argparse.Namespace) -> int:
    reader = read_stream(args.input)
    settings = _load_settings(args, dt=reader.dt)
    span = max(reader.frame_count - 1, 0) * reader.dt
    if span > settings.stream.horizon * (1.0 + _HORIZON_SLACK):
        logger.error("horizon_too_short", span=span, horizon=settings.stream.horizon)
        print(
            f"error: stream spans {span:g} time units but stream.horizon is "
            f"{settings.stream.horizon:g}",
            file=sys.stderr,
        )
        return EXIT_CONFIG

    with run_scope(stage="online"):
        result = process_stream(reader, settings)
    _print_table(
        "Online storage", online_report(result).rows(), ("category", "entries", "% of data")
    )
    if args.split_offline:
        write_problems(args.output, result)
        logger.info("problems_written", path=str(args.output), epochs=len(result.epochs))
        return EXIT_OK

    with run_scope(stage="offline"):
        archive = compress(result)
    manifest_bytes = write_archive(args.output, archive)
    report = offline_report(archive, manifest_bytes=manifest_bytes)
    _print_table("Offline storage", report.rows(), ("category", "entries", "% of data"))
    logger.info("archive_written", path=str(args.output), entries=report.total)
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    result = read_problems(args.input)
    fitting = None
    if args.config is not None:
        fitting = _load_settings(args, dt=result.dt).fitting
    with run_scope(stage="offline"):
        archive = compress(result, fitting)
    manifest_bytes = write_archive(args.output, archive)
    report = offline_report(archive, manifest_bytes=manifest_bytes)
    _print_table("Offline storage", report.rows(), ("category", "entries", "% of data"))
    return EXIT_OK


def _cmd_decompress(args: argparse.Namespace) -> int:
    archive, _ = read_archive(args.input)
    decoder = SurrogateDecoder(max_workers=args.max_workers)
    output = Path(args.output)
    partial = output.with_name(f"{output.name}.partial")
    with run_scope(stage="decompress"):
        try:
            count = write_stream(
                partial, decoder.decode(archive), dt=archive.dt, state_dim=archive.state_dim
            )
        except BaseException:
            partial.unlink(missing_ok=True)
            raise
    partial.replace(output)
    logger.info("stream_written", path=str(args.output), snapshots=count)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    archive, manifest_bytes = read_archive(args.input)
    offline = offline_report(archive, manifest_bytes=manifest_bytes)
    _print_table("Offline storage", offline.rows(), ("category", "entries", "% of data"))
    _print_table("Epochs", _epoch_rows(archive), _EPOCH_HEADERS)
    print(f"online problem entries: {archive.online_entries}")
    print(f"manifest bytes: {manifest_bytes}")
    print()

    if args.equations:
        prefix = "nu" if archive.pod_enabled else "u"
        for epoch in archive.epochs:
            names = [f"{prefix}{i + 1}" for i in range(epoch.n_modes)]
            labels = epoch.projection.labels(names)
            print(f"epoch {epoch.index}:")
            for line in render_equations(epoch.coefficients, labels, names=names):
                print(f"  {line}")
        print()

    if args.truth is None:
        return EXIT_OK
    truth = read_stream(args.truth)
    if truth.state_dim != archive.state_dim:
        raise ArgumentError(
            f"truth has dimension {truth.state_dim}, archive {archive.state_dim}"
        )
    decoder = SurrogateDecoder(max_workers=args.max_workers)
    with run_scope(stage="report"):
        pod_only = project_stream(read_stream(args.truth), archive) if archive.pod_enabled else None
        series = error_metrics(truth, decoder.decode(archive), pod_only)
    csv_path = args.csv or Path(args.input).with_suffix(".metrics.csv")
    np.savetxt(
        csv_path, series.rows(), delimiter=",", header="n,E,D,E_w,truncation", comments=""
    )
    summary = [
        [name, float(np.nanmedian(values)), float(np.nanmax(values))]
        for name, values in (
            ("E", series.overall),
            ("D", series.distance),
            ("E_w", series.fit),
            ("truncation", series.truncation),
        )
        if np.isfinite(values).any()
    ]
    _print_table("Percent errors", summary, ("metric", "median", "max"))
    logger.info("metrics_written", path=str(csv_path), snapshots=len(series))
    return EXIT_OK


def _cmd_gen_lorenz(args: argparse.Namespace) -> int:
    with run_scope(stage="gen"):
        trajectory = lorenz(args.steps, args.dt, tuple(args.initial))
        count = write_stream(args.output, trajectory, dt=args.dt)
    logger.info("stream_written", path=str(args.output), snapshots=count, generator="lorenz")
    return EXIT_OK


def _cmd_gen_field(args: argparse.Namespace) -> int:
    modes = default_field_modes(onset=args.onset)
    with run_scope(stage="gen"):
        frames = synthetic_field(
            args.height, args.width, args.steps, args.dt, modes, seed=args.seed, noise=args.noise
        )
        count = write_stream(args.output, frames, dt=args.dt, state_dim=args.height * args.width)
    logger.info("stream_written", path=str(args.output), snapshots=count, generator="field")
    return EXIT_OK


def _cmd_gen_band(args: argparse.Namespace) -> int:
    with run_scope(stage="gen"):
        frames = drifting_band(args.height, args.width, args.steps, args.dt)
        count = write_stream(args.output, frames, dt=args.dt, state_dim=args.height * args.width)
    logger.info("stream_written", path=str(args.output), snapshots=count, generator="band")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orchid-wsindy",
        description="Streaming weak-SINDy compression of snapshot streams",
    )
    parser.add_argument("--log-level", default=None, help="Override the configured log level")
    parser.add_argument("--env", default=None, help="Config environment overlay (ORCHID_ENV)")
    commands = parser.add_subparsers(dest="command", required=True)

    compress_cmd = commands.add_parser("compress", help="Online pass, then offline fit")
    compress_cmd.add_argument("input", type=Path)
    compress_cmd.add_argument("-o", "--output", type=Path, required=True)
    compress_cmd.add_argument("--config", type=Path, required=True)
    compress_cmd.add_argument("--horizon", type=float, default=None, help="Override stream.horizon")
    compress_cmd.add_argument(
        "--split-offline", action="store_true", help="Write the problem file instead of solving"
    )
    compress_cmd.set_defaults(handler=_cmd_compress)

    solve_cmd = commands.add_parser("solve", help="Offline fit of a saved problem file")
    solve_cmd.add_argument("input", type=Path)
    solve_cmd.add_argument("-o", "--output", type=Path, required=True)
    solve_cmd.add_argument("--config", type=Path, default=None, help="Replace the fitting section")
    solve_cmd.add_argument("--horizon", type=float, default=None)
    solve_cmd.set_defaults(handler=_cmd_solve)

    decompress_cmd = commands.add_parser("decompress", help="Regenerate the snapshot stream")
    decompress_cmd.add_argument("input", type=Path)
    decompress_cmd.add_argument("-o", "--output", type=Path, required=True)
    decompress_cmd.add_argument("--max-workers", type=int, default=None)
    decompress_cmd.set_defaults(handler=_cmd_decompress)

    report_cmd = commands.add_parser("report", help="Storage accounting and error metrics")
    report_cmd.add_argument("input", type=Path)
    report_cmd.add_argument("--truth", type=Path, default=None)
    report_cmd.add_argument("--csv", type=Path, default=None, help="Metrics CSV destination")
    report_cmd.add_argument("--equations", action="store_true", help="Print the fitted models")
    report_cmd.add_argument("--max-workers", type=int, default=None)
    report_cmd.set_defaults(handler=_cmd_report)

    gen_cmd = commands.add_parser("gen", help="Generate test streams")
    generators = gen_cmd.add_subparsers(dest="generator", required=True)

    lorenz_cmd = generators.add_parser("lorenz")
    lorenz_cmd.add_argument("-o", "--output", type=Path, required=True)
    lorenz_cmd.add_argument("--steps", type=int, default=10001)
    lorenz_cmd.add_argument("--dt", type=float, default=0.001)
    lorenz_cmd.add_argument(
        "--initial", type=float, nargs=3, default=list(DEFAULT_INITIAL_STATE)
    )
    lorenz_cmd.set_defaults(handler=_cmd_gen_lorenz)

    field_cmd = generators.add_parser("field")
    field_cmd.add_argument("-o", "--output", type=Path, required=True)
    field_cmd.add_argument("--height", type=int, default=40)
    field_cmd.add_argument("--width", type=int, default=80)
    field_cmd.add_argument("--steps", type=int, default=2000)
    field_cmd.add_argument("--dt", type=float, default=0.01)
    field_cmd.add_argument("--onset", type=int, default=150)
    field_cmd.add_argument("--seed", type=int, default=0)
    field_cmd.add_argument("--noise", type=float, default=0.0)
    field_cmd.set_defaults(handler=_cmd_gen_field)

    band_cmd = generators.add_parser("band")
    band_cmd.add_argument("-o", "--output", type=Path, required=True)
    band_cmd.add_argument("--height", type=int, default=4)
    band_cmd.add_argument("--width", type=int, default=80)
    band_cmd.add_argument("--steps", type=int, default=700)
    band_cmd.add_argument("--dt", type=float, default=0.01)
    band_cmd.set_defaults(handler=_cmd_gen_band)
    return parser


def _exit_code(exc: Exception) -> int | None:
    if isinstance(exc, CodecError | ArgumentError):
        return EXIT_FORMAT
    if isinstance(exc, NumericalError | InvariantViolationError):
        return EXIT_NUMERICAL
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    return None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    bootstrap_logging(
        service=ServiceSettings().name,
        env=args.env,
        level=args.log_level or "INFO",
        log_format="text",
        stream=sys.stderr,
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    with run_scope(run_id=new_run_id(), stage=args.command):
        try:
            return handler(args)
        except OrchidWsindyError as exc:
            code = _exit_code(exc)
            if code is None:
                raise
            logger.error("command_failed", command=args.command, error=str(exc), exit_code=code)
            print(f"error: {exc}", file=sys.stderr)
            return code


if __name__ == "__main__":
    sys.exit(main())
