"""Visual patterns: reusable rules for arranging children inside a container.

list   children packed along one axis with a gap between and around them
set1d  like list (children ordered along one axis)
set3d  children at free positions anywhere inside the container
matrix children in uniform cells on a grid that grows along x then z
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Vec3, axis_index, vmax

PATTERN_KINDS = ("list", "set1d", "set3d", "matrix")

DEFAULT_GAP = 0.5


@dataclass(frozen=True)
class PatternSpec:
    kind: str
    axis: int | None = None
    gap: float = DEFAULT_GAP

    def __post_init__(self) -> None:
        if self.kind not in PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind in ("list", "set1d"):
            if self.axis is None:
                raise ValueError(f"{self.kind} pattern needs an axis")
            object.__setattr__(self, "axis", axis_index(self.axis))
        elif self.axis is not None:
            raise ValueError(f"{self.kind} pattern must not carry an axis")
        if self.gap < 0.0:
            raise ValueError("pattern gap must not be negative")
        object.__setattr__(self, "gap", float(self.gap))


def matrix_cells(positions: Sequence[Vec3 | None]) -> list[tuple[int, int]]:
    """Grid cell (column, row) per child, read from its slot coordinates
    (x component = column, z component = row; missing position = cell 0,0)."""
    cells = []
    for pos in positions:
        if pos is None:
            cells.append((0, 0))
        else:
            cells.append((max(0, round(pos.x)), max(0, round(pos.z))))
    return cells


def matrix_cell_size(extents: Sequence[Vec3]) -> Vec3:
    cell = Vec3(0.0, 0.0, 0.0)
    for e in extents:
        cell = vmax(cell, e)
    return cell


def preferred_size(
    pattern: PatternSpec,
    extents: Sequence[Vec3],
    positions: Sequence[Vec3 | None] | None = None,
) -> Vec3:
    """Container size needed to hold the children under the pattern.

    An empty child list yields the zero vector, i.e. the container keeps its
    authored size.
    """
    n = len(extents)
    if n == 0:
        return Vec3(0.0, 0.0, 0.0)
    gap = pattern.gap

    if pattern.kind in ("list", "set1d"):
        a = pattern.axis
        along = sum(e[a] for e in extents) + gap * (n + 1)
        out = Vec3(0.0, 0.0, 0.0)
        for axis in range(3):
            if axis == a:
                out = out.with_axis(axis, along)
            else:
                out = out.with_axis(axis, max(e[axis] for e in extents) + 2.0 * gap)
        return out

    if pattern.kind == "set3d":
        # Bounding box of the placed children, anchored at the container's
        # local origin so every child box fits inside.
        if positions is None:
            positions = [None] * n
        out = Vec3(0.0, 0.0, 0.0)
        for e, pos in zip(extents, positions):
            corner = e if pos is None else pos + e
            out = vmax(out, corner)
        return out

    # matrix
    if positions is None:
        positions = [None] * n
    cells = matrix_cells(positions)
    cols = 1 + max(c for c, _ in cells)
    rows = 1 + max(r for _, r in cells)
    cell = matrix_cell_size(extents)
    return Vec3(
        cols * cell.x + (cols + 1) * gap,
        cell.y + 2.0 * gap,
        rows * cell.z + (rows + 1) * gap,
    )


def child_offsets(
    pattern: PatternSpec,
    extents: Sequence[Vec3],
    positions: Sequence[Vec3 | None] | None = None,
    container_size: Vec3 | None = None,
) -> list[Vec3]:
    """Container-local origin for each child under the pattern.

    ``container_size`` is the achieved (post-stretch) container size; it is
    only needed to clamp free set3d positions inside the box.
    """
    n = len(extents)
    gap = pattern.gap
    if positions is None:
        positions = [None] * n

    if pattern.kind in ("list", "set1d"):
        a = pattern.axis
        offsets = []
        cursor = gap
        for e in extents:
            off = Vec3(gap, gap, gap).with_axis(a, cursor)
            offsets.append(off)
            cursor += e[a] + gap
        return offsets

    if pattern.kind == "set3d":
        offsets = []
        for e, pos in zip(extents, positions):
            pos = pos if pos is not None else Vec3(0.0, 0.0, 0.0)
            parts = []
            for axis in range(3):
                v = pos[axis]
                if container_size is not None:
                    v = min(v, container_size[axis] - e[axis])
                parts.append(max(0.0, v))
            offsets.append(Vec3(*parts))
        return offsets

    # matrix
    cells = matrix_cells(positions)
    cell = matrix_cell_size(extents)
    return [
        Vec3(gap + c * (cell.x + gap), gap, gap + r * (cell.z + gap))
        for c, r in cells
    ]
