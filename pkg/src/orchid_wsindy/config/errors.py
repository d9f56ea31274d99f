"""Settings errors; the CLI maps every one of them to exit code 4."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from orchid_wsindy.runtime.errors import OrchidWsindyError


class ConfigError(OrchidWsindyError):
    pass


class ConfigFileNotFoundError(ConfigError):
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        super().__init__(f"settings file {self.path} does not exist")


class ConfigValidationError(ConfigError):
    """One or more ``(location, message)`` issues in a settings document."""

    def __init__(self, issues: Sequence[tuple[str, str]]) -> None:
        self.issues = list(issues)
        lines = "".join(f"\n  {location}: {message}" for location, message in self.issues)
        super().__init__(f"invalid settings:{lines}")

    @classmethod
    def from_pydantic(cls, exc: ValidationError) -> ConfigValidationError:
        return cls(
            [
                (".".join(str(part) for part in err["loc"]) or "<root>", err["msg"])
                for err in exc.errors()
            ]
        )

    @property
    def locations(self) -> list[str]:
        return [location for location, _ in self.issues]


class PlaceholderResolutionError(ConfigError):
    def __init__(self, placeholder: str, key_path: str) -> None:
        self.placeholder = placeholder
        self.key_path = key_path
        super().__init__(f"{key_path}: {placeholder} is unset and has no default")


class EmptyBasisError(ConfigError):
    """No singular value of the initial window clears the spectral threshold."""

    def __init__(self, largest: float, threshold: float) -> None:
        self.largest = largest
        self.threshold = threshold
        super().__init__(
            f"Spectral threshold {threshold:g} rejects every mode "
            f"(largest singular value {largest:.6g})"
        )
