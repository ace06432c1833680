"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion
lines as they complete.
"""

from __future__ import annotations

import functools
import random
import time
from dataclasses import replace

import numpy as np

from depict3d import (
    DepictionError,
    Ray,
    Vec3,
    allowed_dof,
    apply_map,
    check_program,
    emit,
    export_scene,
    insert,
    layout_program,
    load_fixture,
    move,
    pick,
    remove,
    validate,
)
from depict3d.depiction import translated
from depict3d.geometry import IDENTITY_QUAT
from depict3d.layout import LayoutScene, SceneNode
from depict3d.stretch import StretchMap1D
from conftest import assembly_language, assembly_program, box_sphere_depiction

from test_interaction import brute_force_pick


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL")
                raise
            print(f"\nACCEPTANCE {name}: PASS")

        return run

    return wrap


@criterion("list-growth-rigid-gap")
def test_list_growth_keeps_box_sphere_distance_rigid():
    lang = assembly_language()
    started = time.perf_counter()
    distances = []
    for n in range(11):
        scene = layout_program(lang, assembly_program(n))
        c1 = next(b for b in scene.containers if b.name == "c1")
        preferred_x = n * 1.0 + (n + 1) * 0.5 if n else 0.0
        assert c1.size.x >= preferred_x - 1e-9, f"n={n}: c1 too small"
        root_nodes = [node for node in scene.nodes if node.owner == 0]
        box = next(node for node in root_nodes if node.kind == "box")
        sphere = next(node for node in root_nodes if node.kind == "sphere")
        distances.append(sphere.min.x - (box.min.x + box.size.x))
    elapsed = time.perf_counter() - started
    assert all(abs(d - distances[0]) <= 1e-9 for d in distances), distances
    assert elapsed < 1.0, f"layout loop took {elapsed:.3f}s"


def _cumulative_slope_oracle(segments, samples: np.ndarray) -> np.ndarray:
    """Numeric oracle: cumulative integral of the slope function over a grid
    refined with every breakpoint, anchored at identity below all segments."""
    lo = samples[0]
    breakpoints = [v for s, e, _ in segments for v in (s, e) if lo <= v <= samples[-1]]
    grid = np.unique(np.concatenate([samples, np.array(breakpoints, dtype=float)]))
    mids = (grid[:-1] + grid[1:]) / 2.0
    slopes = np.ones_like(mids)
    for s, e, k in segments:
        slopes[(mids > s) & (mids < e)] = k
    steps = (slopes * np.diff(grid)).astype(np.longdouble)
    values = np.concatenate([[np.longdouble(lo)], lo + np.cumsum(steps)])
    return values[np.searchsorted(grid, samples)].astype(float)


@criterion("stretch-map-oracle")
def test_apply_map_agrees_with_cumulative_slope_oracle():
    rng = random.Random(424242)
    samples_per_map = 10_000
    for case in range(1000):
        n_segments = rng.randint(1, 5)
        edges = sorted(rng.sample(range(-200, 301), 2 * n_segments))
        segments = []
        for i in range(n_segments):
            s, e = float(edges[2 * i]), float(edges[2 * i + 1])
            segments.append((s, e, 1.0 + rng.uniform(0.0, 4.0)))
        m = StretchMap1D(tuple(segments))
        lo = segments[0][0] - rng.uniform(1.0, 10.0)
        hi = segments[-1][1] + rng.uniform(1.0, 10.0)
        samples = np.linspace(lo, hi, samples_per_map)
        expected = _cumulative_slope_oracle(segments, samples)
        got = np.array([apply_map(m, x) for x in samples])
        worst = np.max(np.abs(got - expected))
        assert worst <= 1e-9, f"case {case}: oracle disagreement {worst:.3e}"
        assert np.all(np.diff(got) > 0.0), f"case {case}: monotonicity violated"


@criterion("validator-fixtures")
def test_fixtures_validate_and_seeded_mutants_fail_as_expected():
    coverage_targets = {
        "molecule": ("molecule_frame", 0, "container[c_atoms].x"),
        "sam": ("sam_agent", 0, "container[c_rules].x"),
        "petri": ("petri_net", 2, "container[c_net].y"),
        "music": ("music_piece", 2, "container[c_grid].z"),
        "vehicles": ("vehicles_terrain", 1, "container[c_ground].y"),
    }
    for fixture, (dep_name, victim, location) in coverage_targets.items():
        _, _, depictions = load_fixture(fixture)
        for dep in depictions.values():
            assert validate(dep) == [], f"{fixture}/{dep.name} not clean"
        target = depictions[dep_name]
        mutant = replace(
            target,
            intervals=tuple(iv for i, iv in enumerate(target.intervals) if i != victim),
        )
        diags = validate(mutant)
        assert [(d.code, d.location) for d in diags] == [("E_COVERAGE", location)], (
            fixture,
            diags,
        )

    # Overlap mutants: shift one of the net's two x intervals onto the other.
    _, _, depictions = load_fixture("petri")
    net = depictions["petri_net"]
    for index, (start, end) in ((1, (5.0, 11.0)), (0, (7.0, 13.0))):
        shifted = list(net.intervals)
        shifted[index] = replace(shifted[index], start=start, end=end)
        diags = validate(replace(net, intervals=tuple(shifted)))
        assert [(d.code, d.location) for d in diags] == [("E_OVERLAP", "interval[1].x")], diags


@criterion("codegen-determinism")
def test_codegen_is_deterministic_normalizing_and_matches_golden():
    for fixture in ("molecule", "sam", "petri", "music", "vehicles"):
        _, _, depictions = load_fixture(fixture)
        for dep in depictions.values():
            first = emit(dep)
            assert emit(dep) == first, f"{dep.name}: nondeterministic emission"
            assert emit(translated(dep, Vec3(7, -3, 2))) == first, (
                f"{dep.name}: translation leaked into the emission"
            )

    text = emit(box_sphere_depiction())
    box_min = None
    c1_min = None
    for line in text.splitlines():
        fields = line.split(" ")
        if fields[0] == "PRIM" and fields[1] == "box":
            box_min = [float(v) for v in fields[2:5]]
        if fields[0] == "CONTAINER" and fields[1] == "c1":
            c1_min = [float(v) for v in fields[2:5]]
    assert box_min is not None and c1_min is not None
    for a in range(3):
        assert c1_min[a] - box_min[a] == 2.0, "container must sit +2 inside the box"


@criterion("layout-purity")
def test_insert_then_remove_restores_scene_bytes():
    lang, prog, _ = load_fixture("petri")
    before = export_scene(layout_program(lang, prog))
    grown = prog
    new_ids = []
    for _ in range(3):
        grown, new_id = insert(lang, grown, 1, "c_tokens", "Token", 0)
        new_ids.append(new_id)
    assert export_scene(layout_program(lang, grown)) != before
    for new_id in reversed(new_ids):
        grown = remove(grown, new_id)
    assert export_scene(layout_program(lang, grown)) == before


@criterion("picking-oracle")
def test_pick_equals_exhaustive_scan_on_random_scenes():
    rng = random.Random(777)
    for case in range(1000):
        nodes = []
        for i in range(100):
            if i >= 90:
                # duplicate earlier boxes so exact t ties exercise the id rule
                twin = nodes[rng.randrange(len(nodes))]
                nodes.append(replace(twin, id=i))
                continue
            nodes.append(
                SceneNode(
                    id=i,
                    owner=0,
                    kind="box",
                    min=Vec3(
                        rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)
                    ),
                    size=Vec3(
                        rng.uniform(0.2, 6), rng.uniform(0.2, 6), rng.uniform(0.2, 6)
                    ),
                    rotation=IDENTITY_QUAT,
                    material=None,
                )
            )
        scene = LayoutScene(nodes=tuple(nodes))
        direction = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
        if direction.norm() == 0.0:
            direction = Vec3(0, 0, -1)
        ray = Ray(
            Vec3(rng.uniform(-25, 25), rng.uniform(-25, 25), rng.uniform(22, 30)),
            direction.normalized(),
        )
        assert pick(scene, ray) == brute_force_pick(scene, ray), f"case {case}"


@criterion("editing-fuzz")
def test_random_op_sequences_preserve_invariants():
    lang, start, _ = load_fixture("petri")
    rng = random.Random(20240810)
    total_steps = 0
    rejected = 0
    for _sequence in range(40):
        prog = start
        for _step in range(25):
            total_steps += 1
            ids = [c.id for c in prog.root.walk()]
            op = rng.choice(
                ["insert_net", "insert_token", "remove", "move_ok", "move_bad", "bad_insert"]
            )
            before = prog
            try:
                if op == "insert_net":
                    kind = rng.choice(["Transition", "Place", "Arrow"])
                    position = Vec3(
                        rng.uniform(0, 15), rng.uniform(0, 8), rng.uniform(0, 10)
                    )
                    prog, _ = insert(lang, prog, 0, "c_net", kind, position)
                elif op == "insert_token":
                    places = [c.id for c in prog.root.walk() if c.kind == "Place"]
                    if not places:
                        continue
                    parent = rng.choice(places)
                    count = len(prog.find(parent).children.get("c_tokens", ()))
                    prog, _ = insert(
                        lang, prog, parent, "c_tokens", "Token", rng.randint(0, count)
                    )
                elif op == "remove":
                    prog = remove(prog, rng.choice(ids))
                elif op == "move_ok":
                    target = rng.choice(ids)
                    mask = allowed_dof(lang, prog, target)
                    axis = rng.choice(sorted(mask.translate))
                    prog = move(
                        lang, prog, target, Vec3().with_axis(axis, rng.uniform(-4, 4))
                    )
                elif op == "move_bad":
                    tokens = [c.id for c in prog.root.walk() if c.kind == "Token"]
                    if not tokens:
                        continue
                    move(lang, prog, rng.choice(tokens), Vec3(0, 0, rng.uniform(0.1, 2)))
                else:
                    insert(lang, prog, 0, "c_net", "Token", Vec3(1, 1, 1))
            except DepictionError:
                rejected += 1
                assert prog == before, "a rejected op mutated the program"
                continue
            check_program(lang, prog)
            seen = [c.id for c in prog.root.walk()]
            assert len(seen) == len(set(seen)), "duplicate construct ids"
    assert total_steps >= 1000
    assert rejected > 0, "fuzz never exercised a rejected op"
