"""Error types shared across the engine."""

from __future__ import annotations


class DocumentError(ValueError):
    """A JSON document is structurally invalid (unknown field, bad shape)."""


class DepictionError(Exception):
    """A semantic engine error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str, location: str = "") -> None:
        super().__init__(message)
        self.code = code
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.code} {self.location} {self.message}"
        return f"{self.code} {self.message}"
