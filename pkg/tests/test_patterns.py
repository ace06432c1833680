"""Pattern sizing and child placement arithmetic."""

from __future__ import annotations

import pytest

from depict3d import PatternSpec, Vec3, child_offsets, preferred_size


UNIT = Vec3(1, 1, 1)


def test_list_preferred_size():
    spec = PatternSpec("list", axis=0, gap=0.5)
    assert preferred_size(spec, [UNIT, UNIT, UNIT]) == Vec3(5.0, 2.0, 2.0)


def test_empty_children_keep_authored_size():
    for spec in (
        PatternSpec("list", axis=1, gap=0.5),
        PatternSpec("set3d"),
        PatternSpec("matrix"),
        PatternSpec("set1d", axis=2),
    ):
        assert preferred_size(spec, []) == Vec3(0, 0, 0)


def test_matrix_preferred_size_two_by_two():
    spec = PatternSpec("matrix", gap=0.0)
    cells = [Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1), Vec3(1, 0, 1)]
    assert preferred_size(spec, [UNIT] * 4, cells) == Vec3(2, 1, 2)


def test_matrix_cell_policy_is_uniform_max():
    spec = PatternSpec("matrix", gap=0.5)
    extents = [Vec3(1, 1, 1), Vec3(2, 0.5, 1.5)]
    cells = [Vec3(0, 0, 0), Vec3(1, 0, 0)]
    # cell = (2, 1, 1.5); 2 cols, 1 row
    assert preferred_size(spec, extents, cells) == Vec3(
        2 * 2 + 3 * 0.5, 1 + 1.0, 1.5 + 2 * 0.5
    )


def test_set3d_preferred_covers_placed_children():
    spec = PatternSpec("set3d")
    extents = [UNIT, Vec3(2, 1, 1)]
    positions = [Vec3(0.5, 0.5, 0.5), Vec3(4, 0, 2)]
    assert preferred_size(spec, extents, positions) == Vec3(6, 1.5, 3)


def test_set1d_sizes_like_list():
    alist = PatternSpec("list", axis=2, gap=0.25)
    aset = PatternSpec("set1d", axis=2, gap=0.25)
    extents = [UNIT, Vec3(1, 1, 2)]
    assert preferred_size(aset, extents) == preferred_size(alist, extents)


def test_list_offsets_pack_with_gaps():
    spec = PatternSpec("list", axis=0, gap=0.5)
    offsets = child_offsets(spec, [UNIT, Vec3(2, 1, 1), UNIT])
    assert offsets == [Vec3(0.5, 0.5, 0.5), Vec3(2.0, 0.5, 0.5), Vec3(4.5, 0.5, 0.5)]


def test_set3d_offsets_clamp_into_container():
    spec = PatternSpec("set3d")
    offsets = child_offsets(
        spec,
        [UNIT],
        [Vec3(-2, 0.5, 9)],
        container_size=Vec3(4, 4, 4),
    )
    assert offsets == [Vec3(0, 0.5, 3)]


def test_matrix_offsets_row_major_cells():
    spec = PatternSpec("matrix", gap=0.25)
    extents = [UNIT, UNIT, UNIT]
    cells = [Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1)]
    offsets = child_offsets(spec, extents, cells)
    assert offsets == [
        Vec3(0.25, 0.25, 0.25),
        Vec3(1.5, 0.25, 0.25),
        Vec3(0.25, 0.25, 1.5),
    ]


def test_pattern_spec_invariants():
    with pytest.raises(ValueError):
        PatternSpec("list")  # axis required
    with pytest.raises(ValueError):
        PatternSpec("set3d", axis=0)  # axis forbidden
    with pytest.raises(ValueError):
        PatternSpec("matrix", gap=-1.0)
    assert PatternSpec("list", axis="y").axis == 1
    assert PatternSpec("set3d").gap == 0.5
