"""Shared builders: the box-plus-sphere depiction with a growing list inside.

A blue box holds container c1 (an x-axis list of red unit boxes) and a green
sphere to its right holds container c2. One stretch interval covers c1 on
each axis; a second x interval covers only the middle of c2. The gap between
the box's right face and the sphere's left face is rigid.
"""

from __future__ import annotations

import pytest

from depict3d import (
    Aabb,
    Construct,
    Container,
    ContainerRule,
    GenericDepiction,
    KindDef,
    LanguageDef,
    Material,
    PatternSpec,
    Primitive,
    Program,
    StretchInterval,
    Vec3,
)


def box_sphere_depiction() -> GenericDepiction:
    return GenericDepiction(
        "box_sphere",
        materials=(
            Material("blue", "color", rgba=(0.2, 0.45, 0.95, 1.0)),
            Material("green", "color", rgba=(0.2, 0.8, 0.35, 1.0)),
        ),
        primitives=(
            Primitive("box", bounds=Aabb(Vec3(0, 0, 0), Vec3(6, 6, 6)), material="blue"),
            Primitive("sphere", bounds=Aabb(Vec3(8, 0, 0), Vec3(6, 6, 6)), material="green"),
        ),
        containers=(
            Container("c1", Aabb(Vec3(2, 2, 2), Vec3(2, 2, 2))),
            Container("c2", Aabb(Vec3(10, 2, 2), Vec3(2, 2, 2))),
        ),
        intervals=(
            StretchInterval(0, 2, 4),
            StretchInterval(0, 10.5, 11.5),
            StretchInterval(1, 2, 4),
            StretchInterval(2, 2, 4),
        ),
    )


def item_depiction() -> GenericDepiction:
    return GenericDepiction(
        "red_item",
        materials=(Material("red", "color", rgba=(0.9, 0.2, 0.15, 1.0)),),
        primitives=(
            Primitive("box", bounds=Aabb(Vec3(0, 0, 0), Vec3(1, 1, 1)), material="red"),
        ),
    )


def assembly_language() -> LanguageDef:
    return LanguageDef(
        "assembly",
        kinds={
            "Assembly": KindDef(
                "Assembly",
                "box_sphere",
                {
                    "c1": ContainerRule(
                        PatternSpec("list", axis=0, gap=0.5), frozenset({"Item"})
                    ),
                    "c2": ContainerRule(PatternSpec("set3d"), frozenset()),
                },
            ),
            "Item": KindDef("Item", "red_item", {}),
        },
        depictions={
            "box_sphere": box_sphere_depiction(),
            "red_item": item_depiction(),
        },
    )


def assembly_program(n_items: int) -> Program:
    items = tuple(Construct(i + 1, "Item") for i in range(n_items))
    return Program("assembly", Construct(0, "Assembly", children={"c1": items}))


@pytest.fixture
def assembly() -> tuple[LanguageDef, GenericDepiction]:
    return assembly_language(), box_sphere_depiction()
