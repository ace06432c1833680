"""Stretch maps: construction, evaluation, and whole-depiction remapping."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depict3d import DepictionError, Vec3, apply_map, build_map, stretch_depiction
from depict3d.stretch import StretchMap1D
from conftest import box_sphere_depiction


def closed_form(segments, x: float) -> float:
    """Independent oracle: identity plus the extra material accumulated by
    every segment left of x (slope k inside [s, e], slope 1 elsewhere)."""
    y = x
    for s, e, k in segments:
        y += (k - 1.0) * max(0.0, min(x, e) - s)
    return y


@st.composite
def _random_map(draw):
    n = draw(st.integers(1, 5))
    edges = sorted(
        draw(st.lists(st.integers(-40, 60), min_size=2 * n, max_size=2 * n, unique=True))
    )
    segments = []
    for i in range(n):
        scale = 1.0 + draw(st.floats(0.0, 9.0, allow_nan=False))
        segments.append((float(edges[2 * i]), float(edges[2 * i + 1]), scale))
    return StretchMap1D(tuple(segments))


# --- apply_map ------------------------------------------------------------------


def test_identity_map():
    assert apply_map(StretchMap1D(), 7.0) == 7.0


def test_single_segment_values():
    m = StretchMap1D(((10.0, 20.0, 1.5),))
    assert apply_map(m, 8.0) == 8.0
    assert apply_map(m, 15.0) == 17.5
    assert apply_map(m, 22.0) == 27.0


def test_rigid_distance_right_of_all_segments():
    m = StretchMap1D(((2.0, 4.0, 3.0), (6.0, 7.0, 2.0)))
    u, v = 9.0, 14.5
    assert apply_map(m, v) - apply_map(m, u) == v - u


@settings(max_examples=200, deadline=None)
@given(_random_map(), st.floats(-80, 120, allow_nan=False))
def test_apply_matches_closed_form_oracle(m, x):
    assert apply_map(m, x) == pytest.approx(closed_form(m.segments, x), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(_random_map(), st.floats(-80, 120, allow_nan=False), st.floats(1e-6, 50, allow_nan=False))
def test_apply_is_strictly_increasing(m, x, gap):
    assert apply_map(m, x) < apply_map(m, x + gap)


def test_map_invariants_enforced():
    with pytest.raises(ValueError):
        StretchMap1D(((0.0, 1.0, 0.5),))  # shrink forbidden
    with pytest.raises(ValueError):
        StretchMap1D(((0.0, 2.0, 1.0), (1.0, 3.0, 1.0)))  # overlap forbidden


# --- build_map ------------------------------------------------------------------


def test_build_map_single_interval_target():
    m = build_map([(10.0, 20.0)], [((10.0, 20.0), 15.0)])
    assert m.segments == ((10.0, 20.0, 1.5),)
    assert apply_map(m, 15.0) == 17.5
    assert apply_map(m, 25.0) == 30.0


def test_build_map_no_deficit_is_identity():
    m = build_map([(0.0, 4.0), (6.0, 8.0)], [((0.0, 10.0), 5.0)])
    assert all(k == 1.0 for _, _, k in m.segments)
    assert apply_map(m, 10.0) == 10.0


def test_build_map_splits_deficit_uniformly():
    m = build_map([(2.0, 4.0), (6.0, 8.0)], [((0.0, 10.0), 14.0)])
    assert m.segments == ((2.0, 4.0, 2.0), (6.0, 8.0, 2.0))
    assert apply_map(m, 10.0) == 14.0
    assert apply_map(m, 5.0) == 7.0


def test_build_map_partial_overlap():
    m = build_map([(1.0, 9.0)], [((1.0, 7.0), 9.0)])
    assert m.segments == ((1.0, 9.0, 1.5),)
    assert apply_map(m, 7.0) == 10.0
    assert apply_map(m, 9.0) == 13.0


def test_build_map_requires_coverage_only_for_deficits():
    # no deficit, no interval needed
    build_map([], [((0.0, 4.0), 3.0)])
    with pytest.raises(DepictionError) as err:
        build_map([(10.0, 12.0)], [((0.0, 4.0), 6.0)])
    assert err.value.code == "E_NO_COVERAGE"


def test_build_map_multiple_targets_all_satisfied():
    targets = [((0.0, 4.0), 7.0), ((3.0, 9.0), 11.0), ((8.0, 10.0), 3.0)]
    m = build_map([(1.0, 3.5), (4.5, 9.5)], targets)
    for (p, q), required in targets:
        assert apply_map(m, q) - apply_map(m, p) >= required - 1e-9
    assert all(k >= 1.0 for _, _, k in m.segments)


# --- stretch_depiction -----------------------------------------------------------


def test_stretch_with_authored_preferred_is_identity():
    d = box_sphere_depiction()
    stretched, layouts = stretch_depiction(d, {"c1": Vec3(2, 2, 2)})
    assert stretched == d
    assert layouts[0].achieved == Vec3(2, 2, 2)


def test_stretch_moves_sphere_right_and_keeps_gap():
    d = box_sphere_depiction()
    grown = Vec3(5.0, 2.0, 2.0)
    stretched, layouts = stretch_depiction(d, {"c1": grown})
    c1 = next(c for c in stretched.containers if c.name == "c1")
    assert c1.bounds.size.x == pytest.approx(5.0, abs=1e-9)
    box, sphere = stretched.primitives
    # rigid distance between the box's right face and the sphere's left face
    assert sphere.bounds.min.x - box.bounds.max.x == 2.0
    assert sphere.bounds.size == Vec3(6, 6, 6)
    layout = next(l for l in layouts if l.name == "c1")
    assert layout.actual == Vec3(2, 2, 2)
    assert layout.preferred == grown


def test_stretch_partial_interval_example():
    from depict3d import Aabb, Container, GenericDepiction, StretchInterval

    d = GenericDepiction(
        "p",
        containers=(Container("c1", Aabb(Vec3(1, 0, 0), Vec3(6, 1, 1))),),
        intervals=(
            StretchInterval(0, 1, 9),
            StretchInterval(1, 0, 1),
            StretchInterval(2, 0, 1),
        ),
    )
    stretched, _ = stretch_depiction(d, {"c1": Vec3(9, 1, 1)})
    c1 = stretched.containers[0]
    assert (c1.bounds.min.x, c1.bounds.max.x) == (1.0, 10.0)
    iv = next(iv for iv in stretched.intervals if iv.axis == 0)
    assert iv.end == 13.0  # source point 9 maps through the 1.5 slope


def test_stretch_never_shrinks_below_authored():
    d = box_sphere_depiction()
    stretched, layouts = stretch_depiction(d, {"c1": Vec3(0.5, 0.5, 0.5)})
    assert stretched == d
    layout = next(l for l in layouts if l.name == "c1")
    assert layout.achieved == Vec3(2, 2, 2)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(0.1, 12.0, allow_nan=False),
    st.floats(0.1, 12.0, allow_nan=False),
    st.floats(0.1, 12.0, allow_nan=False),
)
def test_achieved_covers_preferred(px, py, pz):
    d = box_sphere_depiction()
    want = Vec3(px, py, pz)
    _, layouts = stretch_depiction(d, {"c1": want, "c2": want})
    for layout in layouts:
        for a in range(3):
            assert layout.achieved[a] >= max(layout.actual[a], want[a]) - 1e-9


def test_stretch_preserves_per_axis_ordering():
    d = box_sphere_depiction()
    stretched, _ = stretch_depiction(d, {"c1": Vec3(9, 3, 3), "c2": Vec3(4, 3, 3)})
    for axis in range(3):
        before = [p.bounds.min[axis] for p in d.primitives]
        before += [c.bounds.min[axis] for c in d.containers]
        after = [p.bounds.min[axis] for p in stretched.primitives]
        after += [c.bounds.min[axis] for c in stretched.containers]
        order_before = sorted(range(len(before)), key=lambda i: before[i])
        order_after = sorted(range(len(after)), key=lambda i: after[i])
        assert order_before == order_after
