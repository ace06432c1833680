"""Bottom-up instantiation of nested programs into world geometry.

Every construct is laid out from its pristine authored depiction each time:
container sizes are recomputed from the children actually present, so
removing children shrinks the graphic back without any retained state.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .depiction import GenericDepiction, normalize
from .errors import DepictionError
from .geometry import Aabb, Quat, Vec3, vmax
from .patterns import child_offsets, preferred_size
from .program import Construct, LanguageDef, Program, check_program
from .stretch import stretch_depiction

TEXT_WIDTH_PER_CHAR = 0.6  # monospace model: width = 0.6 * font height * chars


@dataclass(frozen=True)
class SceneNode:
    """One placed shape in world space."""

    id: int
    owner: int
    kind: str
    min: Vec3
    size: Vec3
    rotation: Quat
    material: str | None = None
    content: str | None = None
    endpoints: tuple[Vec3, Vec3] | None = None


@dataclass(frozen=True)
class ContainerBox:
    owner: int
    name: str
    min: Vec3
    size: Vec3


@dataclass(frozen=True)
class LayoutScene:
    """The fully instantiated world: placed shapes plus container boxes."""

    nodes: tuple[SceneNode, ...] = ()
    containers: tuple[ContainerBox, ...] = ()


def _effective_depiction(d: GenericDepiction) -> GenericDepiction:
    """Normalized depiction with text primitives given their intrinsic width."""
    sized = []
    changed = False
    for p in d.primitives:
        if p.kind == "text":
            width = TEXT_WIDTH_PER_CHAR * p.bounds.size.y * len(p.content or "")
            sized.append(replace(p, bounds=Aabb(p.bounds.min, p.bounds.size.with_axis(0, width))))
            changed = True
        else:
            sized.append(p)
    if changed:
        d = replace(d, primitives=tuple(sized))
    if not d.primitives and not d.containers and not d.intervals:
        return d
    return normalize(d)


@dataclass(frozen=True)
class _Placed:
    """Layout of one construct in its own local frame (origin = neutral point)."""

    construct: Construct
    extent: Vec3
    depiction: GenericDepiction
    children: tuple[tuple[Vec3, "_Placed"], ...]


def _layout_construct(lang: LanguageDef, construct: Construct) -> _Placed:
    kd = lang.kinds.get(construct.kind)
    if kd is None:
        raise DepictionError("E_UNKNOWN_KIND", f"kind '{construct.kind}' is not declared")
    dep = _effective_depiction(lang.depictions[kd.depiction])

    placed_children: dict[str, list[_Placed]] = {}
    preferred: dict[str, Vec3] = {}
    for cname, kids in construct.children.items():
        if cname not in kd.containers:
            raise DepictionError(
                "E_BAD_CONTAINER", f"kind '{construct.kind}' has no container '{cname}'"
            )
        placed = [_layout_construct(lang, kid) for kid in kids]
        placed_children[cname] = placed
        rule = kd.containers[cname]
        preferred[cname] = preferred_size(
            rule.pattern,
            [p.extent for p in placed],
            [kid.free_position for kid in kids],
        )

    stretched, _ = stretch_depiction(dep, preferred)
    boxes = {c.name: c.bounds for c in stretched.containers}

    children: list[tuple[Vec3, _Placed]] = []
    for cname, placed in placed_children.items():
        rule = kd.containers[cname]
        box = boxes[cname]
        kids = construct.children[cname]
        offsets = child_offsets(
            rule.pattern,
            [p.extent for p in placed],
            [kid.free_position for kid in kids],
            box.size,
        )
        for offset, sub in zip(offsets, placed):
            children.append((box.min + offset, sub))

    extent = Vec3(0.0, 0.0, 0.0)
    for p in stretched.primitives:
        extent = vmax(extent, p.bounds.max)
    for c in stretched.containers:
        extent = vmax(extent, c.bounds.max)

    return _Placed(construct, extent, stretched, tuple(children))


def _emit(placed: _Placed, origin: Vec3, nodes: list[SceneNode], boxes: list[ContainerBox]) -> None:
    owner = placed.construct.id
    for p in placed.depiction.primitives:
        endpoints = None
        if p.endpoints is not None:
            endpoints = (p.endpoints[0] + origin, p.endpoints[1] + origin)
        nodes.append(
            SceneNode(
                id=len(nodes),
                owner=owner,
                kind=p.kind,
                min=p.bounds.min + origin,
                size=p.bounds.size,
                rotation=p.rotation,
                material=p.material,
                content=p.content,
                endpoints=endpoints,
            )
        )
    for c in placed.depiction.containers:
        boxes.append(ContainerBox(owner, c.name, c.bounds.min + origin, c.bounds.size))
    for offset, sub in placed.children:
        _emit(sub, origin + offset, nodes, boxes)


def construct_extent(lang: LanguageDef, construct: Construct) -> Vec3:
    """World-space size of a construct's subtree in its local frame."""
    return _layout_construct(lang, construct).extent


def layout_program(lang: LanguageDef, prog: Program) -> LayoutScene:
    """Instantiate a program into a deterministic world-space scene.

    Pure function of its inputs: identical programs yield identical scenes,
    and re-layout after insert + remove restores the previous scene exactly.
    """
    check_program(lang, prog)
    placed = _layout_construct(lang, prog.root)
    nodes: list[SceneNode] = []
    boxes: list[ContainerBox] = []
    _emit(placed, Vec3(0.0, 0.0, 0.0), nodes, boxes)
    return LayoutScene(tuple(nodes), tuple(boxes))
