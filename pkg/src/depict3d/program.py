"""Languages and programs: construct kinds bound to depictions, and the
editable tree of construct instances.

Programs are immutable values. Every edit returns a new program and leaves
the input untouched, which makes undo stacks and atomic service mutations
trivial. Fresh construct ids are ``max(existing) + 1`` so that inserting and
then removing a construct restores the previous program exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Iterator, Mapping

from . import documents
from .depiction import GenericDepiction
from .errors import DepictionError, DocumentError
from .geometry import Vec3, axis_index
from .patterns import PatternSpec


@dataclass(frozen=True)
class ContainerRule:
    """How one container of a kind's depiction arranges and admits children."""

    pattern: PatternSpec
    allowed: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "allowed", frozenset(self.allowed))


@dataclass(frozen=True)
class KindDef:
    name: str
    depiction: str
    containers: Mapping[str, ContainerRule]

    def __post_init__(self) -> None:
        object.__setattr__(self, "containers", dict(self.containers))


@dataclass(frozen=True)
class LanguageDef:
    """A visual language: construct kinds plus the depictions they reference."""

    name: str
    kinds: Mapping[str, KindDef]
    depictions: Mapping[str, GenericDepiction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kinds", dict(self.kinds))
        object.__setattr__(self, "depictions", dict(self.depictions))
        for kd in self.kinds.values():
            dep = self.depictions.get(kd.depiction)
            if dep is None:
                raise DocumentError(
                    f"kind '{kd.name}' references unknown depiction '{kd.depiction}'"
                )
            names = dep.container_names()
            for cname, rule in kd.containers.items():
                if cname not in names:
                    raise DocumentError(
                        f"kind '{kd.name}' binds container '{cname}' that does not exist"
                        f" in depiction '{kd.depiction}'"
                    )
                for child in rule.allowed:
                    if child not in self.kinds:
                        raise DocumentError(
                            f"kind '{kd.name}' container '{cname}' allows undeclared kind '{child}'"
                        )


@dataclass(frozen=True)
class Construct:
    """One node of a program tree.

    ``children`` maps container names to ordered child lists; order matters
    for list/set1d containers. ``free_position`` holds container-local
    coordinates for set3d children and grid slot coordinates for matrix
    children.
    """

    id: int
    kind: str
    children: Mapping[str, tuple["Construct", ...]] = None  # type: ignore[assignment]
    free_position: Vec3 | None = None

    def __post_init__(self) -> None:
        kids = self.children or {}
        object.__setattr__(self, "children", {k: tuple(v) for k, v in kids.items()})

    def walk(self) -> Iterator["Construct"]:
        yield self
        for kids in self.children.values():
            for child in kids:
                yield from child.walk()


@dataclass(frozen=True)
class Program:
    language: str
    root: Construct

    def find(self, construct_id: int) -> Construct | None:
        for c in self.root.walk():
            if c.id == construct_id:
                return c
        return None

    def parent_of(self, construct_id: int) -> tuple[Construct, str, int] | None:
        """(parent, container name, index) of a construct, or None for the root."""
        for c in self.root.walk():
            for cname, kids in c.children.items():
                for i, child in enumerate(kids):
                    if child.id == construct_id:
                        return (c, cname, i)
        return None

    def fresh_id(self) -> int:
        return 1 + max(c.id for c in self.root.walk())


@dataclass(frozen=True)
class DofMask:
    """Degrees of freedom a construct may be manipulated along."""

    translate: frozenset[int]
    rotate: frozenset[int] = frozenset()
    scale: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "translate", frozenset(axis_index(a) for a in self.translate))
        object.__setattr__(self, "rotate", frozenset(axis_index(a) for a in self.rotate))


ALL_AXES = frozenset((0, 1, 2))


def check_program(lang: LanguageDef, prog: Program) -> None:
    """Raise if the program does not type-check against the language."""
    seen: set[int] = set()
    for c in prog.root.walk():
        if c.id in seen:
            raise DocumentError(f"duplicate construct id {c.id}")
        seen.add(c.id)
        kd = lang.kinds.get(c.kind)
        if kd is None:
            raise DepictionError("E_UNKNOWN_KIND", f"kind '{c.kind}' is not declared", f"construct[{c.id}]")
        for cname, kids in c.children.items():
            rule = kd.containers.get(cname)
            if rule is None:
                raise DepictionError(
                    "E_BAD_CONTAINER",
                    f"kind '{c.kind}' has no container '{cname}'",
                    f"construct[{c.id}]",
                )
            for child in kids:
                if child.kind not in rule.allowed:
                    raise DepictionError(
                        "E_KIND_NOT_ALLOWED",
                        f"kind '{child.kind}' is not allowed in '{c.kind}.{cname}'",
                        f"construct[{child.id}]",
                    )


def _rebuild(construct: Construct, target_id: int, update) -> Construct:
    """Return a copy of the tree where ``update`` has replaced the target node."""
    if construct.id == target_id:
        return update(construct)
    changed = False
    children = {}
    for cname, kids in construct.children.items():
        new_kids = []
        for child in kids:
            new_child = _rebuild(child, target_id, update)
            if new_child is not child:
                changed = True
            new_kids.append(new_child)
        children[cname] = tuple(new_kids)
    if not changed:
        return construct
    return replace(construct, children=children)


def _container_rule(lang: LanguageDef, prog: Program, construct_id: int) -> tuple[Construct, str, ContainerRule] | None:
    at = prog.parent_of(construct_id)
    if at is None:
        return None
    parent, cname, _ = at
    rule = lang.kinds[parent.kind].containers[cname]
    return parent, cname, rule


def insert(
    lang: LanguageDef,
    prog: Program,
    parent_id: int,
    container: str,
    kind: str,
    position: int | Vec3,
) -> tuple[Program, int]:
    """Insert a fresh construct and return (new program, new construct id).

    ``position`` is a list index for list/set1d containers, free coordinates
    for set3d containers, and grid slot coordinates for matrix containers.
    """
    parent = prog.find(parent_id)
    if parent is None:
        raise DepictionError("E_UNKNOWN_PARENT", f"no construct with id {parent_id}")
    kd = lang.kinds.get(parent.kind)
    rule = kd.containers.get(container) if kd else None
    if rule is None:
        raise DepictionError(
            "E_BAD_CONTAINER", f"kind '{parent.kind}' has no container '{container}'"
        )
    if kind not in lang.kinds:
        raise DepictionError("E_UNKNOWN_KIND", f"kind '{kind}' is not declared")
    if kind not in rule.allowed:
        raise DepictionError(
            "E_KIND_NOT_ALLOWED", f"kind '{kind}' is not allowed in '{parent.kind}.{container}'"
        )

    new_id = prog.fresh_id()
    siblings = parent.children.get(container, ())

    if rule.pattern.kind in ("list", "set1d"):
        if not isinstance(position, int) or isinstance(position, bool):
            raise DepictionError("E_BAD_POSITION", f"{rule.pattern.kind} insert needs an index")
        if not 0 <= position <= len(siblings):
            raise DepictionError(
                "E_BAD_POSITION", f"index {position} outside [0, {len(siblings)}]"
            )
        node = Construct(new_id, kind)
        new_kids = siblings[:position] + (node,) + siblings[position:]
    elif rule.pattern.kind == "set3d":
        if not isinstance(position, Vec3):
            raise DepictionError("E_BAD_POSITION", "set3d insert needs coordinates")
        node = Construct(new_id, kind, free_position=position)
        new_kids = siblings + (node,)
    else:  # matrix
        if not isinstance(position, Vec3):
            raise DepictionError("E_BAD_POSITION", "matrix insert needs a grid cell")
        cell = (max(0, round(position.x)), max(0, round(position.z)))
        from .patterns import matrix_cells

        taken = matrix_cells([c.free_position for c in siblings])
        if cell in taken:
            raise DepictionError("E_BAD_POSITION", f"grid cell {cell} is already occupied")
        node = Construct(new_id, kind, free_position=Vec3(cell[0], 0.0, cell[1]))
        new_kids = siblings + (node,)

    def update(c: Construct) -> Construct:
        children = dict(c.children)
        children[container] = new_kids
        return replace(c, children=children)

    return replace(prog, root=_rebuild(prog.root, parent_id, update)), new_id


def remove(prog: Program, construct_id: int) -> Program:
    """Remove a construct and its subtree. The root cannot be removed."""
    if prog.root.id == construct_id:
        raise DepictionError("E_IS_ROOT", "the root construct cannot be removed")
    at = prog.parent_of(construct_id)
    if at is None:
        raise DepictionError("E_UNKNOWN_CONSTRUCT", f"no construct with id {construct_id}")
    parent, cname, index = at

    def update(c: Construct) -> Construct:
        kids = c.children[cname]
        children = dict(c.children)
        children[cname] = kids[:index] + kids[index + 1 :]
        return replace(c, children=children)

    return replace(prog, root=_rebuild(prog.root, parent.id, update))


def allowed_dof(lang: LanguageDef, prog: Program, construct_id: int) -> DofMask:
    """Translation axes a construct may move along, from its parent pattern."""
    if prog.find(construct_id) is None:
        raise DepictionError("E_UNKNOWN_CONSTRUCT", f"no construct with id {construct_id}")
    at = _container_rule(lang, prog, construct_id)
    if at is None:
        return DofMask(translate=ALL_AXES)
    _, _, rule = at
    if rule.pattern.kind in ("list", "set1d"):
        return DofMask(translate=frozenset((rule.pattern.axis,)))
    if rule.pattern.kind == "matrix":
        return DofMask(translate=frozenset((0, 2)))
    return DofMask(translate=ALL_AXES)


def move(lang: LanguageDef, prog: Program, construct_id: int, delta: Vec3) -> Program:
    """Translate a construct, restricted to its allowed degrees of freedom.

    List/set1d children reorder when they cross a neighbor's midpoint along
    the pattern axis; set3d children shift their free position, clamped to
    the current container box; matrix children hop grid cells (swapping with
    an occupant).
    """
    if prog.find(construct_id) is None:
        raise DepictionError("E_UNKNOWN_CONSTRUCT", f"no construct with id {construct_id}")
    mask = allowed_dof(lang, prog, construct_id)
    for a in range(3):
        if delta[a] != 0.0 and a not in mask.translate:
            raise DepictionError(
                "E_DOF_VIOLATION",
                f"construct {construct_id} cannot move along axis"
                f" {'xyz'[a]}",
            )
    at = _container_rule(lang, prog, construct_id)
    if at is None:
        return prog  # the root has no layout slot to move within
    parent, cname, rule = at
    siblings = parent.children[cname]
    index = next(i for i, c in enumerate(siblings) if c.id == construct_id)

    from .layout import construct_extent  # deferred: layout builds on this module

    if rule.pattern.kind in ("list", "set1d"):
        a = rule.pattern.axis
        gap = rule.pattern.gap
        extents = [construct_extent(lang, c) for c in siblings]
        centers = []
        cursor = gap
        for e in extents:
            centers.append(cursor + e[a] / 2.0)
            cursor += e[a] + gap
        moved_center = centers[index] + delta[a]
        new_index = sum(
            1 for i, c in enumerate(centers) if i != index and c < moved_center
        )
        if new_index == index:
            return prog
        node = siblings[index]
        rest = siblings[:index] + siblings[index + 1 :]
        new_kids = rest[:new_index] + (node,) + rest[new_index:]

        def update(c: Construct) -> Construct:
            children = dict(c.children)
            children[cname] = new_kids
            return replace(c, children=children)

        return replace(prog, root=_rebuild(prog.root, parent.id, update))

    if rule.pattern.kind == "set3d":
        from .layout import layout_program

        scene = layout_program(lang, prog)
        box = next(
            b for b in scene.containers if b.owner == parent.id and b.name == cname
        )
        node = siblings[index]
        extent = construct_extent(lang, node)
        pos = node.free_position if node.free_position is not None else Vec3()
        parts = []
        for a in range(3):
            v = pos[a] + delta[a]
            v = min(v, box.size[a] - extent[a])
            parts.append(max(0.0, v))
        new_pos = Vec3(*parts)
        if new_pos == pos:
            return prog
        return replace(
            prog,
            root=_rebuild(
                prog.root, construct_id, lambda c: replace(c, free_position=new_pos)
            ),
        )

    # matrix: convert the world-unit delta to whole grid cells
    from .patterns import matrix_cell_size, matrix_cells

    extents = [construct_extent(lang, c) for c in siblings]
    cell = matrix_cell_size(extents)
    gap = rule.pattern.gap
    cells = matrix_cells([c.free_position for c in siblings])
    col, row = cells[index]
    pitch_x = cell.x + gap
    pitch_z = cell.z + gap
    steps_x = round(delta.x / pitch_x) if pitch_x > 0 else 0
    steps_z = round(delta.z / pitch_z) if pitch_z > 0 else 0
    target = (max(0, col + steps_x), max(0, row + steps_z))
    if target == (col, row):
        return prog

    moves: dict[int, Vec3] = {siblings[index].id: Vec3(target[0], 0.0, target[1])}
    if target in cells:
        other = siblings[cells.index(target)]
        moves[other.id] = Vec3(col, 0.0, row)

    new_root = prog.root
    for cid, pos in moves.items():
        new_root = _rebuild(new_root, cid, lambda c, p=pos: replace(c, free_position=p))
    return replace(prog, root=new_root)


# --- JSON document formats ----------------------------------------------------


def parse_language(doc: Any, depictions: Mapping[str, GenericDepiction]) -> LanguageDef:
    top = documents.check_fields(doc, "language", ["name", "kinds"])
    name = documents.as_string(top["name"], "language.name", nonempty=True)
    kinds: dict[str, KindDef] = {}
    for i, k in enumerate(documents.as_array(top["kinds"], "kinds")):
        where = f"kinds[{i}]"
        documents.check_fields(k, where, ["kind", "depiction"], ["containers"])
        kind_name = documents.as_string(k["kind"], f"{where}.kind", nonempty=True)
        if kind_name in kinds:
            raise DocumentError(f"duplicate kind '{kind_name}'")
        rules: dict[str, ContainerRule] = {}
        containers = k.get("containers", {})
        if not isinstance(containers, dict):
            raise DocumentError(f"{where}.containers must be an object")
        for cname, rule in containers.items():
            rwhere = f"{where}.containers[{cname}]"
            documents.check_fields(rule, rwhere, ["pattern"], ["children"])
            pdoc = documents.check_fields(rule["pattern"], f"{rwhere}.pattern", ["kind"], ["axis", "gap"])
            axis = None
            if "axis" in pdoc:
                axis = documents.as_string(pdoc["axis"], f"{rwhere}.pattern.axis")
            gap = documents.as_number(pdoc["gap"], f"{rwhere}.pattern.gap") if "gap" in pdoc else None
            try:
                spec = PatternSpec(
                    documents.as_string(pdoc["kind"], f"{rwhere}.pattern.kind"),
                    axis=axis_index(axis) if axis is not None else None,
                    **({"gap": gap} if gap is not None else {}),
                )
            except ValueError as exc:
                raise DocumentError(f"{rwhere}: {exc}") from exc
            allowed = [
                documents.as_string(c, f"{rwhere}.children[{j}]")
                for j, c in enumerate(documents.as_array(rule.get("children", []), f"{rwhere}.children"))
            ]
            rules[cname] = ContainerRule(spec, frozenset(allowed))
        kinds[kind_name] = KindDef(
            kind_name, documents.as_string(k["depiction"], f"{where}.depiction"), rules
        )
    return LanguageDef(name, kinds, dict(depictions))


def _parse_construct(doc: Any, where: str) -> Construct:
    top = documents.check_fields(doc, where, ["kind", "id"], ["children", "pos"])
    children: dict[str, tuple[Construct, ...]] = {}
    raw_children = top.get("children", {})
    if not isinstance(raw_children, dict):
        raise DocumentError(f"{where}.children must be an object")
    for cname, kids in raw_children.items():
        children[cname] = tuple(
            _parse_construct(kid, f"{where}.children[{cname}][{i}]")
            for i, kid in enumerate(documents.as_array(kids, f"{where}.children[{cname}]"))
        )
    pos = documents.as_vec3(top["pos"], f"{where}.pos") if "pos" in top else None
    return Construct(
        documents.as_int(top["id"], f"{where}.id"),
        documents.as_string(top["kind"], f"{where}.kind", nonempty=True),
        children=children,
        free_position=pos,
    )


def parse_program(doc: Any) -> Program:
    top = documents.check_fields(doc, "program", ["language", "root"])
    prog = Program(
        documents.as_string(top["language"], "program.language", nonempty=True),
        _parse_construct(top["root"], "root"),
    )
    seen: set[int] = set()
    for c in prog.root.walk():
        if c.id in seen:
            raise DocumentError(f"duplicate construct id {c.id}")
        seen.add(c.id)
    return prog


def construct_to_doc(c: Construct) -> dict:
    doc: dict = {"kind": c.kind, "id": c.id}
    if c.free_position is not None:
        doc["pos"] = list(c.free_position.to_tuple())
    if c.children:
        doc["children"] = {
            cname: [construct_to_doc(k) for k in kids] for cname, kids in c.children.items()
        }
    return doc


def program_to_doc(prog: Program) -> dict:
    return {"language": prog.language, "root": construct_to_doc(prog.root)}


def load_program(path: str | Path) -> Program:
    return parse_program(documents.load_path(path))


def load_language(path: str | Path, depictions: Mapping[str, GenericDepiction]) -> LanguageDef:
    return parse_language(documents.load_path(path), depictions)


__all__ = [
    "ContainerRule",
    "KindDef",
    "LanguageDef",
    "Construct",
    "Program",
    "DofMask",
    "check_program",
    "insert",
    "remove",
    "move",
    "allowed_dof",
    "parse_language",
    "parse_program",
    "program_to_doc",
    "load_program",
    "load_language",
]
