"""Typed errors for the on-disk formats."""

from __future__ import annotations

from orchid_wsindy.runtime.errors import OrchidWsindyError


class CodecError(OrchidWsindyError):
    """Base exception for file format operations."""

    def __init__(self, operation: str, path: str | None, message: str) -> None:
        self.operation = operation
        self.path = path
        target = "<memory>" if path is None else path
        super().__init__(f"Codec {operation} failed for '{target}': {message}")


class FormatError(CodecError):
    """Raised for a wrong magic, unsupported version or malformed manifest."""


class CorruptionError(CodecError):
    """Raised when the payload is truncated or inconsistent with its header."""

    def __init__(self, operation: str, path: str | None, message: str, *, offset: int) -> None:
        self.offset = offset
        super().__init__(operation, path, f"{message} (byte offset {offset})")
