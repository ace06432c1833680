"""Builder-code emission: determinism, normalization, round-trip."""

from __future__ import annotations

import pytest

from depict3d import DepictionError, Vec3, emit, emit_all, load_fixture, normalize
from depict3d.depiction import translated
from conftest import box_sphere_depiction, item_depiction


BOX_SPHERE_GOLDEN = """DEPICTION box_sphere
MATERIAL blue color 0.200000 0.450000 0.950000 1.000000
MATERIAL green color 0.200000 0.800000 0.350000 1.000000
CONTAINER c1 2.000000 2.000000 2.000000 2.000000 2.000000 2.000000
CONTAINER c2 10.000000 2.000000 2.000000 2.000000 2.000000 2.000000
STRETCH X 2.000000 4.000000
STRETCH X 10.500000 11.500000
STRETCH Y 2.000000 4.000000
STRETCH Z 2.000000 4.000000
PRIM box 0.000000 0.000000 0.000000 6.000000 6.000000 6.000000 0.000000 0.000000 0.000000 1.000000 blue
PRIM sphere 8.000000 0.000000 0.000000 6.000000 6.000000 6.000000 0.000000 0.000000 0.000000 1.000000 green
END
"""


def parse_gdep(text: str) -> dict:
    """Minimal reader for the emitted format, used to check the round trip."""
    out = {"name": None, "materials": [], "containers": [], "intervals": [], "prims": []}
    for line in text.splitlines():
        fields = line.split(" ")
        tag = fields[0]
        if tag == "DEPICTION":
            out["name"] = fields[1]
        elif tag == "MATERIAL":
            out["materials"].append((fields[1], fields[2], fields[3:]))
        elif tag == "CONTAINER":
            nums = [float(v) for v in fields[2:8]]
            out["containers"].append((fields[1], nums[:3], nums[3:]))
        elif tag == "STRETCH":
            out["intervals"].append((fields[1].lower(), float(fields[2]), float(fields[3])))
        elif tag == "PRIM":
            nums = [float(v) for v in fields[2:12]]
            material = fields[12]
            tail = " ".join(fields[13:]) if len(fields) > 13 else None
            out["prims"].append((fields[1], nums[:3], nums[3:6], nums[6:10], material, tail))
        elif tag == "END":
            break
        else:
            raise AssertionError(f"unknown line tag {tag!r}")
    return out


def test_golden_box_sphere_emission():
    assert emit(box_sphere_depiction()) == BOX_SPHERE_GOLDEN


def test_container_sits_two_units_inside_the_box():
    parsed = parse_gdep(emit(box_sphere_depiction()))
    c1 = next(c for c in parsed["containers"] if c[0] == "c1")
    box = next(p for p in parsed["prims"] if p[0] == "box")
    for a in range(3):
        assert c1[1][a] - box[1][a] == 2.0


def test_emission_is_byte_stable():
    d = box_sphere_depiction()
    assert emit(d) == emit(d)


def test_emission_invariant_under_translation():
    d = box_sphere_depiction()
    assert emit(translated(d, Vec3(7, -3, 2))) == emit(d)


def test_emission_stable_under_container_and_interval_permutation():
    d = box_sphere_depiction()
    from dataclasses import replace

    permuted = replace(
        d,
        containers=tuple(reversed(d.containers)),
        intervals=tuple(reversed(d.intervals)),
    )
    assert emit(permuted) == emit(d)


def test_round_trip_geometry_matches_normalized_source():
    lang, _, depictions = load_fixture("sam")
    for d in depictions.values():
        n = normalize(d)
        parsed = parse_gdep(emit(d))
        assert parsed["name"] == n.name
        assert len(parsed["prims"]) == len(n.primitives)
        for rec, prim in zip(parsed["prims"], n.primitives):
            kind, lo, size, quat, material, tail = rec
            assert kind == prim.kind
            for a in range(3):
                assert lo[a] == pytest.approx(prim.bounds.min[a], abs=5e-7)
                assert size[a] == pytest.approx(prim.bounds.size[a], abs=5e-7)
            assert material == (prim.material or "-")
        for rec, c in zip(parsed["containers"], sorted(n.containers, key=lambda c: c.name)):
            name, lo, size = rec
            assert name == c.name
            for a in range(3):
                assert lo[a] == pytest.approx(c.bounds.min[a], abs=5e-7)
                assert size[a] == pytest.approx(c.bounds.size[a], abs=5e-7)
        canonical = sorted(n.intervals, key=lambda iv: (iv.axis, iv.start, iv.end))
        for rec, iv in zip(parsed["intervals"], canonical):
            axis, start, end = rec
            assert "xyz".index(axis) == iv.axis
            assert start == pytest.approx(iv.start, abs=5e-7)
            assert end == pytest.approx(iv.end, abs=5e-7)


def test_text_and_mesh_tails_survive():
    lang, _, depictions = load_fixture("sam")
    agent = emit(depictions["sam_agent"])
    assert any(line.startswith("PRIM text") and line.endswith(" agent") for line in agent.splitlines())
    _, _, vehicles = load_fixture("vehicles")
    bus = emit(vehicles["vehicles_bus"])
    assert any(line.endswith("meshes/bus.gltf") for line in bus.splitlines())


def test_invalid_depiction_refused():
    from dataclasses import replace

    d = box_sphere_depiction()
    broken = replace(d, intervals=d.intervals[:2])  # y and z coverage gone
    with pytest.raises(DepictionError) as err:
        emit(broken)
    assert err.value.code == "E_INVALID_DEPICTION"


def test_emit_all_petri_yields_five_sorted_outputs():
    _, _, depictions = load_fixture("petri")
    out = emit_all(depictions.values())
    assert list(out) == sorted(out)
    assert len(out) == 5


def test_emit_all_empty_and_duplicates():
    assert emit_all([]) == {}
    d = item_depiction()
    with pytest.raises(DepictionError) as err:
        emit_all([d, d])
    assert err.value.code == "E_DUP_NAME"
