"""Rubber-sheet stretching as monotone piecewise-linear coordinate maps.

The mental model: geometry is printed on elastic rubber and the ends of each
stretch interval are handles. Pulling the handles scales the covered regions
linearly while everything outside keeps its exact distances. One map per axis
turns that picture into an executable coordinate remapping.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .depiction import Container, GenericDepiction, StretchInterval
from .errors import DepictionError
from .geometry import Aabb, Vec3


@dataclass(frozen=True)
class StretchMap1D:
    """Piecewise-linear, strictly increasing remapping of one axis.

    Each segment is (source_start, source_end, scale) with scale >= 1; the
    map has slope ``scale`` inside a segment and slope 1 everywhere else, and
    is the identity below the first segment.
    """

    segments: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        segs = tuple((float(s), float(e), float(k)) for s, e, k in self.segments)
        object.__setattr__(self, "segments", segs)
        prev_end = None
        for s, e, k in segs:
            if not s < e:
                raise ValueError(f"segment [{s}, {e}] must have positive length")
            if k < 1.0:
                raise ValueError(f"segment scale {k} must be >= 1 (stretch only)")
            if prev_end is not None and s < prev_end:
                raise ValueError("segments must be disjoint and sorted")
            prev_end = e
        # Precompute breakpoints and their images for O(log n) evaluation.
        knots: list[float] = []
        values: list[float] = []
        slopes: list[float] = []  # slope of the piece that starts at each knot
        acc = None
        for s, e, k in segs:
            if acc is None:
                acc = s  # identity below the first segment
            else:
                acc += s - knots[-1]
            knots.append(s)
            values.append(acc)
            slopes.append(k)
            acc += k * (e - s)
            knots.append(e)
            values.append(acc)
            slopes.append(1.0)
        object.__setattr__(self, "_knots", knots)
        object.__setattr__(self, "_values", values)
        object.__setattr__(self, "_slopes", slopes)

    def apply(self, x: float) -> float:
        knots: list[float] = self._knots  # type: ignore[attr-defined]
        if not knots or x <= knots[0]:
            return x
        i = bisect.bisect_right(knots, x) - 1
        return self._values[i] + self._slopes[i] * (x - knots[i])  # type: ignore[attr-defined]

    def image_length(self, lo: float, hi: float) -> float:
        return self.apply(hi) - self.apply(lo)


IDENTITY_MAP = StretchMap1D()


def apply_map(m: StretchMap1D, x: float) -> float:
    """Image of ``x`` under the map: continuous, strictly increasing, slope 1
    outside all segments so uncovered distances are preserved exactly."""
    return m.apply(float(x))


def _as_pairs(intervals: Iterable) -> list[tuple[float, float]]:
    pairs = []
    for iv in intervals:
        if isinstance(iv, StretchInterval):
            pairs.append((iv.start, iv.end))
        else:
            s, e = iv
            pairs.append((float(s), float(e)))
    pairs.sort()
    for (s1, e1), (s2, e2) in zip(pairs, pairs[1:]):
        if s2 < e1:
            raise ValueError(f"intervals [{s1}, {e1}] and [{s2}, {e2}] overlap")
    for s, e in pairs:
        if not s < e:
            raise ValueError(f"interval [{s}, {e}] must have positive length")
    return pairs


def build_map(
    intervals: Iterable,
    targets: Sequence[tuple[tuple[float, float], float]],
) -> StretchMap1D:
    """Grow interval scales until every target reaches its required size.

    ``intervals`` are disjoint (start, end) handles on one axis (plain pairs
    or StretchInterval values); each target pairs a source projection [p, q]
    with the size its image must reach. For every deficit, all intervals that
    intersect the target share the growth in proportion to their overlap
    measured in current image coordinates, i.e. a uniform extra slope over
    the intersecting intervals. Scales only ever grow, so iterating over the
    targets reaches a fixed point in at most ``len(targets)`` passes.
    """
    pairs = _as_pairs(intervals)
    scales = [1.0] * len(pairs)

    def current() -> StretchMap1D:
        return StretchMap1D(tuple((s, e, k) for (s, e), k in zip(pairs, scales)))

    m = current()
    for _ in range(max(1, len(targets))):
        changed = False
        for (p, q), required in targets:
            deficit = required - m.image_length(p, q)
            if deficit <= 0.0:
                continue
            hit = [
                i
                for i, (s, e) in enumerate(pairs)
                if min(e, q) - max(s, p) > 0.0
            ]
            if not hit:
                raise DepictionError(
                    "E_NO_COVERAGE",
                    f"no stretch interval intersects [{p:g}, {q:g}] but {required:g} is required",
                )
            total = sum(
                m.image_length(max(pairs[i][0], p), min(pairs[i][1], q)) for i in hit
            )
            factor = 1.0 + deficit / total
            for i in hit:
                scales[i] *= factor
            m = current()
            changed = True
        if not changed:
            break
    return m


@dataclass(frozen=True)
class ContainerLayout:
    """Per-container sizing result of one stretch pass (all sizes in wu)."""

    name: str
    actual: Vec3
    preferred: Vec3
    achieved: Vec3


def build_axis_maps(
    d: GenericDepiction, preferred: Mapping[str, Vec3]
) -> tuple[StretchMap1D, StretchMap1D, StretchMap1D]:
    """One map per axis, sized so every container fits its preferred size.

    Containers never drop below their authored size; containers without an
    entry in ``preferred`` contribute no growth requirement.
    """
    maps = []
    for a in range(3):
        pairs = [(iv.start, iv.end) for iv in d.intervals if iv.axis == a]
        targets = []
        for c in d.containers:
            lo, hi = c.bounds.project(a)
            want = preferred.get(c.name)
            required = max(hi - lo, want[a]) if want is not None else hi - lo
            targets.append(((lo, hi), required))
        maps.append(build_map(pairs, targets))
    return (maps[0], maps[1], maps[2])


def stretch_depiction(
    d: GenericDepiction, preferred: Mapping[str, Vec3]
) -> tuple[GenericDepiction, list[ContainerLayout]]:
    """Remap a depiction so each container reaches its preferred size.

    Pure function of the authored depiction and the preferences: re-laying
    out from pristine geometry every time means removing children shrinks
    the graphic back toward its authored size naturally.
    """
    maps = build_axis_maps(d, preferred)

    def map_point(v: Vec3) -> Vec3:
        return Vec3(maps[0].apply(v.x), maps[1].apply(v.y), maps[2].apply(v.z))

    def map_box(b: Aabb) -> Aabb:
        lo = map_point(b.min)
        hi = map_point(b.max)
        return Aabb(lo, hi - lo)

    primitives = []
    for p in d.primitives:
        if p.endpoints is not None:
            moved = (map_point(p.endpoints[0]), map_point(p.endpoints[1]))
            primitives.append(replace(p, bounds=None, endpoints=moved))
        else:
            primitives.append(replace(p, bounds=map_box(p.bounds)))

    containers = []
    layouts = []
    for c in d.containers:
        box = map_box(c.bounds)
        containers.append(Container(c.name, box))
        want = preferred.get(c.name)
        layouts.append(
            ContainerLayout(
                c.name,
                actual=c.bounds.size,
                preferred=want if want is not None else c.bounds.size,
                achieved=box.size,
            )
        )

    intervals = [
        replace(iv, start=maps[iv.axis].apply(iv.start), end=maps[iv.axis].apply(iv.end))
        for iv in d.intervals
    ]

    stretched = replace(
        d,
        primitives=tuple(primitives),
        containers=tuple(containers),
        intervals=tuple(intervals),
    )
    return stretched, layouts
