"""Basic 3D value types: vectors, axis-aligned boxes, quaternions.

Coordinate convention is right-handed: x right, y up, z toward the viewer.
All values are immutable; everything downstream treats them as plain data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

AXIS_NAMES = ("x", "y", "z")

Quat = tuple[float, float, float, float]

IDENTITY_QUAT: Quat = (0.0, 0.0, 0.0, 1.0)


def axis_index(axis: int | str) -> int:
    """Return 0/1/2 for an axis given as an index or as "x"/"y"/"z"."""
    if isinstance(axis, str):
        name = axis.lower()
        if name in AXIS_NAMES:
            return AXIS_NAMES.index(name)
        raise ValueError(f"unknown axis {axis!r}")
    if isinstance(axis, bool) or axis not in (0, 1, 2):
        raise ValueError(f"unknown axis {axis!r}")
    return axis


def axis_name(axis: int) -> str:
    return AXIS_NAMES[axis_index(axis)]


def _finite(value: object, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Vec3:
    """A point or extent in world units. Components are always finite."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self) -> None:
        for name in AXIS_NAMES:
            object.__setattr__(self, name, _finite(getattr(self, name), f"Vec3.{name}"))

    def __getitem__(self, axis: int | str) -> float:
        return (self.x, self.y, self.z)[axis_index(axis)]

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def with_axis(self, axis: int | str, value: float) -> "Vec3":
        parts = [self.x, self.y, self.z]
        parts[axis_index(axis)] = value
        return Vec3(*parts)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def to_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


def vmax(a: Vec3, b: Vec3) -> Vec3:
    return Vec3(max(a.x, b.x), max(a.y, b.y), max(a.z, b.z))


def vmin(a: Vec3, b: Vec3) -> Vec3:
    return Vec3(min(a.x, b.x), min(a.y, b.y), min(a.z, b.z))


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned box given by its minimal corner and size.

    Sizes are expected to be non-negative; that is a semantic rule reported
    by the depiction validator rather than enforced here, so that malformed
    documents can still be represented and diagnosed.
    """

    min: Vec3
    size: Vec3

    @property
    def max(self) -> Vec3:
        return self.min + self.size

    def project(self, axis: int | str) -> tuple[float, float]:
        a = axis_index(axis)
        lo = self.min[a]
        return (lo, lo + self.size[a])

    def translated(self, offset: Vec3) -> "Aabb":
        return Aabb(self.min + offset, self.size)

    def corners(self) -> list[Vec3]:
        lo, hi = self.min, self.max
        return [
            Vec3(x, y, z)
            for x in (lo.x, hi.x)
            for y in (lo.y, hi.y)
            for z in (lo.z, hi.z)
        ]

    @staticmethod
    def bounding(points: Iterable[Vec3]) -> "Aabb":
        pts = list(points)
        if not pts:
            raise ValueError("cannot bound an empty point set")
        lo = hi = pts[0]
        for p in pts[1:]:
            lo = vmin(lo, p)
            hi = vmax(hi, p)
        return Aabb(lo, hi - lo)


def quat_norm(q: Sequence[float]) -> float:
    x, y, z, w = q
    return math.sqrt(x * x + y * y + z * z + w * w)


def quat_conjugate(q: Quat) -> Quat:
    x, y, z, w = q
    return (-x, -y, -z, w)


def quat_rotate(q: Quat, v: Vec3) -> Vec3:
    """Rotate a vector by a unit quaternion (x, y, z, w)."""
    qx, qy, qz, qw = q
    # t = 2 * (q.xyz x v); v' = v + w*t + q.xyz x t
    tx = 2.0 * (qy * v.z - qz * v.y)
    ty = 2.0 * (qz * v.x - qx * v.z)
    tz = 2.0 * (qx * v.y - qy * v.x)
    return Vec3(
        v.x + qw * tx + (qy * tz - qz * ty),
        v.y + qw * ty + (qz * tx - qx * tz),
        v.z + qw * tz + (qx * ty - qy * tx),
    )
