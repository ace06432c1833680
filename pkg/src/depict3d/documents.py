"""Strict helpers for the JSON document formats.

All documents reject unknown fields by name, reject non-finite numbers, and
treat booleans as non-numbers, so that authoring mistakes surface as parse
errors instead of silently skewing geometry.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import DocumentError
from .geometry import Vec3


def _reject_constant(name: str) -> float:
    raise DocumentError(f"non-finite number {name!r} is not allowed")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def load_path(path: str | Path) -> Any:
    return loads(Path(path).read_text(encoding="utf-8"))


def check_fields(obj: Any, where: str, required: Sequence[str], optional: Sequence[str] = ()) -> Mapping[str, Any]:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object, got {type(obj).__name__}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise DocumentError(f"unknown field '{key}' in {where}")
    for key in required:
        if key not in obj:
            raise DocumentError(f"missing field '{key}' in {where}")
    return obj


def get_number(obj: Mapping[str, Any], key: str, where: str) -> float:
    return as_number(obj[key], f"{where}.{key}")


def as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise DocumentError(f"{where} must be finite")
    return out


def as_string(value: Any, where: str, nonempty: bool = False) -> str:
    if not isinstance(value, str):
        raise DocumentError(f"{where} must be a string, got {value!r}")
    if nonempty and not value:
        raise DocumentError(f"{where} must not be empty")
    return value


def as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where} must be an integer, got {value!r}")
    return value


def as_vec3(value: Any, where: str) -> Vec3:
    if not isinstance(value, list) or len(value) != 3:
        raise DocumentError(f"{where} must be an array of 3 numbers")
    return Vec3(*(as_number(v, f"{where}[{i}]") for i, v in enumerate(value)))


def as_array(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{where} must be an array")
    return value
