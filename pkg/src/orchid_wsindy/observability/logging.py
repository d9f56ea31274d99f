"""Structured logging for compression runs.

Every record carries the service, the environment and the active
:class:`RunContext` (run id, CLI stage and, inside per-epoch work, the epoch
index). Components log through :func:`get_logger`, which takes an event name
plus keyword fields in the structlog manner and emits ordinary ``logging``
records, so pytest's ``caplog`` sees the event name as the message.
"""

from __future__ import annotations

import contextvars
import dataclasses
import json
import logging
import os
import random
import uuid
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from datetime import UTC, datetime
from typing import TYPE_CHECKING, Any, TextIO

if TYPE_CHECKING:
    from orchid_wsindy.config.models import CompressionSettings

_RESERVED = frozenset(logging.makeLogRecord({}).__dict__) | {"asctime", "message", "taskName"}
_CONTEXT_FIELDS = ("run_id", "stage", "epoch")


@dataclasses.dataclass(frozen=True, slots=True)
class RunContext:
    run_id: str | None = None
    stage: str | None = None
    epoch: int | None = None

    def fields(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in _CONTEXT_FIELDS}


_RUN_CONTEXT: contextvars.ContextVar[RunContext] = contextvars.ContextVar(
    "orchid_wsindy_run_context", default=RunContext()
)


def get_run_context() -> RunContext:
    return _RUN_CONTEXT.get()


def new_run_id() -> str:
    return uuid.uuid4().hex


def _clean(name: str, value: Any) -> Any:
    if value is None or name == "epoch":
        return value
    text = str(value).strip()
    return text or None


@contextmanager
def run_scope(**changes: Any) -> Iterator[RunContext]:
    """Overlay ``run_id``, ``stage`` or ``epoch`` on the current context.

    Blank strings clear a field; fields not named keep their outer value.
    """
    unknown = set(changes) - set(_CONTEXT_FIELDS)
    if unknown:
        raise TypeError(f"unknown run context fields: {sorted(unknown)}")
    cleaned = {name: _clean(name, value) for name, value in changes.items()}
    context = dataclasses.replace(_RUN_CONTEXT.get(), **cleaned)
    token = _RUN_CONTEXT.set(context)
    try:
        yield context
    finally:
        _RUN_CONTEXT.reset(token)


class SamplingFilter(logging.Filter):
    """Keep a random share of sub-WARNING records."""

    def __init__(self, sampling: float) -> None:
        super().__init__()
        self._sampling = sampling

    def filter(self, record: logging.LogRecord) -> bool:
        return record.levelno >= logging.WARNING or random.random() < self._sampling


class _RunFormatter(logging.Formatter):
    def __init__(self, *, service: str, env: str, fmt: str | None = None) -> None:
        super().__init__(fmt)
        self._service = service
        self._env = env

    def context_fields(self) -> dict[str, Any]:
        return {"service": self._service, "env": self._env, **get_run_context().fields()}

    @staticmethod
    def event_fields(record: logging.LogRecord) -> dict[str, Any]:
        return {
            key: value
            for key, value in record.__dict__.items()
            if key not in _RESERVED and not key.startswith("_") and key not in _CONTEXT_FIELDS
        }


class JsonFormatter(_RunFormatter):
    def format(self, record: logging.LogRecord) -> str:
        timestamp = datetime.fromtimestamp(record.created, tz=UTC)
        payload: dict[str, Any] = {
            "timestamp": timestamp.isoformat(timespec="milliseconds").replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            **self.context_fields(),
            **self.event_fields(record),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str, ensure_ascii=True)


class TextFormatter(_RunFormatter):
    def __init__(self, *, service: str, env: str) -> None:
        super().__init__(
            service=service, env=env, fmt="%(asctime)s %(levelname)s %(name)s %(message)s"
        )

    def format(self, record: logging.LogRecord) -> str:
        fields = {
            key: value for key, value in self.event_fields(record).items() if key != "event"
        }
        fields.update(
            (key, "-" if value is None else value) for key, value in self.context_fields().items()
        )
        rendered = " ".join(f"{key}={value}" for key, value in fields.items())
        return f"{super().format(record)} {rendered}"


class StructlogCompatLogger:
    """Event-style logger over a stdlib logger.

    ``logger.bind(epoch=1).warning("short_segment", rows=3)`` emits a record
    whose message is ``short_segment`` with ``rows`` and ``epoch`` as extra
    fields. Keys that collide with ``LogRecord`` attributes are nested under
    ``shadowed_fields``. ``run_id``, ``stage`` and ``epoch`` given as fields
    override the run context for that one record.
    """

    __slots__ = ("_bound", "_logger")

    def __init__(self, logger: logging.Logger, bound: Mapping[str, Any] | None = None) -> None:
        self._logger = logger
        self._bound = dict(bound or {})

    @property
    def logger(self) -> logging.Logger:
        return self._logger

    @property
    def bound_fields(self) -> dict[str, Any]:
        return dict(self._bound)

    def bind(self, **fields: Any) -> StructlogCompatLogger:
        return StructlogCompatLogger(self._logger, {**self._bound, **fields})

    def debug(self, event: str, **fields: Any) -> None:
        self._emit(logging.DEBUG, event, fields)

    def info(self, event: str, **fields: Any) -> None:
        self._emit(logging.INFO, event, fields)

    def warning(self, event: str, **fields: Any) -> None:
        self._emit(logging.WARNING, event, fields)

    def error(self, event: str, **fields: Any) -> None:
        self._emit(logging.ERROR, event, fields)

    def exception(self, event: str, **fields: Any) -> None:
        fields.setdefault("exc_info", True)
        self._emit(logging.ERROR, event, fields)

    def _emit(self, level: int, event: str, fields: dict[str, Any]) -> None:
        if not self._logger.isEnabledFor(level):
            return
        merged = {**self._bound, **fields}
        exc_info = merged.pop("exc_info", None)
        overrides = {name: merged.pop(name) for name in _CONTEXT_FIELDS if name in merged}

        extra: dict[str, Any] = {"event": event}
        shadowed = {}
        for key, value in merged.items():
            if key in _RESERVED:
                shadowed[key] = value
            else:
                extra[key] = value
        if shadowed:
            extra["shadowed_fields"] = shadowed

        with run_scope(**overrides):
            self._logger.log(level, event, extra=extra, exc_info=exc_info, stacklevel=3)


def get_logger(name: str | None = None, **bound: Any) -> StructlogCompatLogger:
    return StructlogCompatLogger(logging.getLogger(name), bound)


def bootstrap_logging(
    *,
    service: str,
    env: str | None = None,
    level: str = "INFO",
    log_format: str = "json",
    sampling: float | None = None,
    logger: logging.Logger | None = None,
    stream: TextIO | None = None,
) -> logging.Logger:
    """Replace the handlers of ``logger`` (root by default) with one run-aware handler."""
    env = env if env is not None else os.getenv("ORCHID_ENV", "development")
    target = logger or logging.getLogger()
    for handler in list(target.handlers):
        target.removeHandler(handler)

    formatter_type = TextFormatter if log_format == "text" else JsonFormatter
    handler = logging.StreamHandler(stream)
    handler.setFormatter(formatter_type(service=service, env=env))
    if sampling is not None and sampling < 1.0:
        handler.addFilter(SamplingFilter(sampling))

    target.addHandler(handler)
    target.setLevel(level.upper())
    if target is not logging.getLogger():
        target.propagate = False
    return target


def bootstrap_logging_from_settings(
    settings: CompressionSettings,
    *,
    env: str | None = None,
    level: str | None = None,
    logger: logging.Logger | None = None,
    stream: TextIO | None = None,
) -> logging.Logger:
    return bootstrap_logging(
        service=settings.service.name,
        env=env,
        level=level or settings.logging.level,
        log_format=settings.logging.format,
        sampling=settings.logging.sampling,
        logger=logger,
        stream=stream,
    )
