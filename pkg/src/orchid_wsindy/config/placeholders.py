"""Environment variable placeholder resolution."""

from __future__ import annotations

import json
import os
import re
from typing import Any

from orchid_wsindy.config.errors import PlaceholderResolutionError

PLACEHOLDER_PATTERN = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?}")


def resolve_placeholders(
    data: dict[str, Any],
    *,
    strict: bool = True,
    _path: str = "",
) -> dict[str, Any]:
    """Resolve ``${ENV_VAR}`` and ``${ENV_VAR:-default}`` placeholders.

    A value consisting of exactly one placeholder is coerced when the resolved
    text is a JSON number or boolean, so thresholds can come from the environment.

    Args:
        data: Configuration dictionary to process.
        strict: If True, raise error for unresolved placeholders without a default.
        _path: Internal path tracker for error messages.

    Returns:
        New dictionary with placeholders resolved.

    Raises:
        PlaceholderResolutionError: If strict=True and a placeholder cannot be resolved.
    """
    result: dict[str, Any] = {}
    for key, value in data.items():
        current_path = f"{_path}.{key}" if _path else key
        result[key] = _resolve_value(value, current_path, strict)
    return result


def _resolve_value(value: Any, path: str, strict: bool) -> Any:
    if isinstance(value, dict):
        return {key: _resolve_value(item, f"{path}.{key}", strict) for key, item in value.items()}
    if isinstance(value, list):
        return [
            _resolve_value(item, f"{path}[{index}]", strict) for index, item in enumerate(value)
        ]
    if not isinstance(value, str):
        return value

    def replace_match(match: re.Match[str]) -> str:
        env_var, default = match.group(1), match.group(2)
        env_value = os.environ.get(env_var)
        if env_value is not None:
            return env_value
        if default is not None:
            return default
        if strict:
            raise PlaceholderResolutionError(match.group(0), path)
        return match.group(0)

    resolved = PLACEHOLDER_PATTERN.sub(replace_match, value)
    if PLACEHOLDER_PATTERN.fullmatch(value) and resolved != value:
        return _coerce_scalar(resolved)
    return resolved


def _coerce_scalar(text: str) -> Any:
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError:
        return text
    if isinstance(parsed, bool | int | float):
        return parsed
    return text
