"""Settings files: JSON layers, environment overlay, placeholders, validation."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from orchid_wsindy.config.errors import ConfigFileNotFoundError, ConfigValidationError
from orchid_wsindy.config.models import CompressionSettings
from orchid_wsindy.config.placeholders import resolve_placeholders

DEFAULT_CONFIG_DIR = Path("config")
DEFAULT_BASE_FILE = "appsettings.json"
ENV_VAR_NAME = "ORCHID_ENV"
DEFAULT_ENV = "development"


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Return ``base`` updated by ``override``, merging nested sections key by key."""
    merged = dict(base)
    for key, value in override.items():
        current = merged.get(key)
        if isinstance(current, dict) and isinstance(value, dict):
            merged[key] = deep_merge(current, value)
        else:
            merged[key] = value
    return merged


def load_json_file(path: Path) -> dict[str, Any]:
    """Parse one settings layer; syntax errors report ``file:line:column``."""
    if not path.exists():
        raise ConfigFileNotFoundError(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigValidationError([(f"{path}:{exc.lineno}:{exc.colno}", exc.msg)]) from exc
    if not isinstance(data, dict):
        raise ConfigValidationError([(str(path), "top level must be an object")])
    return data


def validate_settings(config: dict[str, Any]) -> CompressionSettings:
    try:
        return CompressionSettings.model_validate(config)
    except ValidationError as exc:
        raise ConfigValidationError.from_pydantic(exc) from exc


def load_config(
    *,
    config_dir: Path | str | None = None,
    env: str | None = None,
    overrides: dict[str, Any] | None = None,
    strict_placeholders: bool = True,
) -> CompressionSettings:
    """Load ``<config_dir>/appsettings.json`` and its environment overlay.

    See :func:`load_config_file` for the layering; ``config_dir`` defaults to
    ``./config``.
    """
    directory = DEFAULT_CONFIG_DIR if config_dir is None else Path(config_dir)
    return load_config_file(
        directory / DEFAULT_BASE_FILE,
        env=env,
        overrides=overrides,
        strict_placeholders=strict_placeholders,
    )


def load_config_file(
    path: Path | str,
    *,
    env: str | None = None,
    overrides: dict[str, Any] | None = None,
    strict_placeholders: bool = True,
) -> CompressionSettings:
    """Load one settings file and validate it.

    Layers, later ones winning:

    1. ``path`` itself, e.g. ``config/field.json``;
    2. the sibling ``<stem>.<env>.json`` when it exists, with ``env`` taken
       from the argument, then ``ORCHID_ENV``, then ``development``;
    3. ``overrides`` from the caller (the CLI injects the stream's time step
       and ``--horizon`` here).

    ``${VAR}`` placeholders are resolved after merging, so overrides may
    contain them too.
    """
    path = Path(path)
    env = env or os.environ.get(ENV_VAR_NAME, DEFAULT_ENV)

    config = load_json_file(path)
    overlay = path.with_name(f"{path.stem}.{env}{path.suffix}")
    if overlay.exists():
        config = deep_merge(config, load_json_file(overlay))
    if overrides:
        config = deep_merge(config, overrides)

    return validate_settings(resolve_placeholders(config, strict=strict_placeholders))
