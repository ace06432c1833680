"""Generic depictions: the parametric 3D graphic behind one language construct.

A depiction bundles four things: graphical primitives, materials, named
containers that embed nested constructs, and per-axis stretch intervals that
say where the graphic may grow. Depictions are immutable values; validation
returns diagnostics instead of raising so that authoring tools can show all
problems at once.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from . import documents
from .errors import DepictionError, DocumentError
from .geometry import (
    Aabb,
    IDENTITY_QUAT,
    Quat,
    Vec3,
    axis_index,
    axis_name,
    quat_norm,
)

MATERIAL_KINDS = ("color", "texture", "custom")

PRIMITIVE_KINDS = (
    "box",
    "sphere",
    "cone",
    "cylinder",
    "arrow",
    "line",
    "quad",
    "torus",
    "model3d",
    "text",
)

UNIT_QUAT_TOL = 1e-9

DIAGNOSTIC_CODES = (
    "E_COVERAGE",
    "E_OVERLAP",
    "E_DUP_CONTAINER",
    "E_BAD_MATERIAL_REF",
    "E_BAD_INTERVAL",
    "E_NEG_SIZE",
    "E_BAD_QUAT",
    "E_EMPTY",
)


@dataclass(frozen=True)
class Material:
    """Surface description mapped onto primitives.

    Color materials carry RGBA in [0, 1]; texture and custom (shader)
    materials carry an opaque file reference that is only checked for
    non-emptiness.
    """

    id: str
    kind: str
    rgba: tuple[float, float, float, float] | None = None
    path: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("material id must not be empty")
        if self.kind not in MATERIAL_KINDS:
            raise ValueError(f"unknown material kind {self.kind!r}")
        if self.kind == "color":
            if self.rgba is None or len(self.rgba) != 4:
                raise ValueError(f"color material '{self.id}' needs 4 rgba components")
            if self.path is not None:
                raise ValueError(f"color material '{self.id}' must not carry a path")
            rgba = tuple(float(v) for v in self.rgba)
            for v in rgba:
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"material '{self.id}' rgba component {v} outside [0, 1]")
            object.__setattr__(self, "rgba", rgba)
        else:
            if self.rgba is not None:
                raise ValueError(f"{self.kind} material '{self.id}' must not carry rgba")
            if not self.path:
                raise ValueError(f"{self.kind} material '{self.id}' needs a file path")
            if "\n" in self.path:
                raise ValueError(f"material '{self.id}' path must not contain newlines")


@dataclass(frozen=True)
class Primitive:
    """One graphical shape of a depiction.

    Line and arrow primitives are defined by their two endpoints and their
    bounds are always the endpoints' bounding box; for every other kind the
    bounds are authored directly. ``material`` may be None only for 3D models
    (validation reports it for all other kinds).
    """

    kind: str
    bounds: Aabb | None = None
    rotation: Quat = IDENTITY_QUAT
    material: str | None = None
    content: str | None = None
    mesh: str | None = None
    endpoints: tuple[Vec3, Vec3] | None = None

    def __post_init__(self) -> None:
        if self.kind not in PRIMITIVE_KINDS:
            raise ValueError(f"unknown primitive kind {self.kind!r}")
        rot = tuple(float(v) for v in self.rotation)
        if len(rot) != 4:
            raise ValueError("rotation must have 4 components")
        object.__setattr__(self, "rotation", rot)
        if self.kind in ("line", "arrow"):
            if self.endpoints is None:
                raise ValueError(f"{self.kind} primitive needs endpoints")
            endpoints = (self.endpoints[0], self.endpoints[1])
            object.__setattr__(self, "endpoints", endpoints)
            derived = Aabb.bounding(endpoints)
            if self.bounds is None:
                object.__setattr__(self, "bounds", derived)
            elif self.bounds != derived:
                raise ValueError(f"{self.kind} bounds must equal the endpoints' bounding box")
        else:
            if self.endpoints is not None:
                raise ValueError(f"{self.kind} primitive must not carry endpoints")
            if self.bounds is None:
                raise ValueError(f"{self.kind} primitive needs bounds")
        if self.kind == "model3d":
            if not self.mesh:
                raise ValueError("model3d primitive needs a mesh path")
        elif self.mesh is not None:
            raise ValueError(f"{self.kind} primitive must not carry a mesh path")
        if self.kind == "text":
            if self.content is None:
                object.__setattr__(self, "content", "")
            if "\n" in self.content:
                raise ValueError("text content must not contain newlines")
        elif self.content is not None:
            raise ValueError(f"{self.kind} primitive must not carry text content")


@dataclass(frozen=True)
class Container:
    """Named region of a depiction that embeds nested constructs."""

    name: str
    bounds: Aabb

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("container name must not be empty")


@dataclass(frozen=True)
class StretchInterval:
    """Segment on one coordinate axis where the depiction may elongate.

    ``start < end`` is a semantic rule checked by :func:`validate`.
    """

    axis: int
    start: float
    end: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", axis_index(self.axis))
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "end", float(self.end))


@dataclass(frozen=True)
class GenericDepiction:
    """The authored quadruple: primitives, materials, containers, intervals."""

    name: str
    materials: tuple[Material, ...] = ()
    primitives: tuple[Primitive, ...] = ()
    containers: tuple[Container, ...] = ()
    intervals: tuple[StretchInterval, ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("depiction name must not be empty")
        object.__setattr__(self, "materials", tuple(self.materials))
        object.__setattr__(self, "primitives", tuple(self.primitives))
        object.__setattr__(self, "containers", tuple(self.containers))
        object.__setattr__(self, "intervals", tuple(self.intervals))

    def container_names(self) -> set[str]:
        return {c.name for c in self.containers}

    def sorted_intervals(self) -> list[StretchInterval]:
        """Intervals in canonical (axis, start, end) order.

        Diagnostics and generated code index intervals in this order, so the
        output is independent of how the source document lists them.
        """
        return sorted(self.intervals, key=lambda iv: (iv.axis, iv.start, iv.end))


@dataclass(frozen=True, order=True)
class Diagnostic:
    """One well-formedness violation with a source-resolvable location."""

    code: str
    location: str
    message: str


def _interval_location(index: int, axis: int) -> str:
    return f"interval[{index}].{axis_name(axis)}"


def validate(d: GenericDepiction) -> list[Diagnostic]:
    """Check depiction well-formedness and return sorted diagnostics.

    The empty list means the depiction is well formed: every container is
    intersected by at least one stretch interval on every axis, intervals on
    one axis never share an interior point, container names are unique,
    material references resolve, intervals are properly ordered, sizes are
    not negative, and rotations are unit quaternions.
    """
    diags: list[Diagnostic] = []

    seen_materials: dict[str, int] = {}
    for m in d.materials:
        if m.id in seen_materials:
            diags.append(
                Diagnostic(
                    "E_BAD_MATERIAL_REF",
                    f"material[{m.id}]",
                    f"duplicate material id '{m.id}'",
                )
            )
        seen_materials[m.id] = 1

    material_ids = {m.id for m in d.materials}

    dup_names = set()
    seen_names = set()
    for c in d.containers:
        if c.name in seen_names:
            dup_names.add(c.name)
        seen_names.add(c.name)
    for name in dup_names:
        diags.append(
            Diagnostic("E_DUP_CONTAINER", f"container[{name}]", f"duplicate container name '{name}'")
        )

    for c in d.containers:
        for a in range(3):
            if c.bounds.size[a] <= 0.0:
                diags.append(
                    Diagnostic(
                        "E_NEG_SIZE",
                        f"container[{c.name}].{axis_name(a)}",
                        f"container '{c.name}' size must be positive on axis {axis_name(a)}",
                    )
                )

    for i, p in enumerate(d.primitives):
        for a in range(3):
            if p.bounds.size[a] < 0.0:
                diags.append(
                    Diagnostic(
                        "E_NEG_SIZE",
                        f"primitive[{i}].{axis_name(a)}",
                        f"{p.kind} size must not be negative on axis {axis_name(a)}",
                    )
                )
        if abs(quat_norm(p.rotation) - 1.0) > UNIT_QUAT_TOL:
            diags.append(
                Diagnostic(
                    "E_BAD_QUAT",
                    f"primitive[{i}]",
                    f"rotation {p.rotation} is not a unit quaternion",
                )
            )
        if p.kind != "model3d":
            if p.material is None:
                diags.append(
                    Diagnostic(
                        "E_BAD_MATERIAL_REF",
                        f"primitive[{i}]",
                        f"{p.kind} primitive needs a material reference",
                    )
                )
            elif p.material not in material_ids:
                diags.append(
                    Diagnostic(
                        "E_BAD_MATERIAL_REF",
                        f"primitive[{i}]",
                        f"material '{p.material}' is not defined",
                    )
                )
        elif p.material is not None and p.material not in material_ids:
            diags.append(
                Diagnostic(
                    "E_BAD_MATERIAL_REF",
                    f"primitive[{i}]",
                    f"material '{p.material}' is not defined",
                )
            )

    ordered = d.sorted_intervals()
    well_formed: list[tuple[int, StretchInterval]] = []
    for i, iv in enumerate(ordered):
        if not iv.start < iv.end:
            diags.append(
                Diagnostic(
                    "E_BAD_INTERVAL",
                    _interval_location(i, iv.axis),
                    f"interval start {iv.start:g} must be less than end {iv.end:g}",
                )
            )
        else:
            well_formed.append((i, iv))

    # Overlap: shared interior on the same axis; touching endpoints are fine.
    for pos, (j, iv) in enumerate(well_formed):
        for i, other in well_formed[:pos]:
            if other.axis != iv.axis:
                continue
            if min(other.end, iv.end) - max(other.start, iv.start) > 0.0:
                diags.append(
                    Diagnostic(
                        "E_OVERLAP",
                        _interval_location(j, iv.axis),
                        f"interval [{iv.start:g}, {iv.end:g}] on axis {axis_name(iv.axis)}"
                        f" overlaps [{other.start:g}, {other.end:g}]",
                    )
                )

    # Coverage: every container crossed by at least one interval per axis.
    for c in d.containers:
        for a in range(3):
            lo, hi = c.bounds.project(a)
            covered = any(
                iv.axis == a and min(iv.end, hi) - max(iv.start, lo) > 0.0
                for _, iv in well_formed
            )
            if not covered:
                diags.append(
                    Diagnostic(
                        "E_COVERAGE",
                        f"container[{c.name}].{axis_name(a)}",
                        f"container '{c.name}' is not intersected by any stretch interval"
                        f" on axis {axis_name(a)}",
                    )
                )

    return sorted(diags)


def normalize(d: GenericDepiction) -> GenericDepiction:
    """Translate a depiction so its neutral point sits at the origin.

    The neutral point is the per-axis minimum over all primitive bounds,
    container bounds, and interval start positions. The translation is exact
    arithmetic on the stored values, so normalize is idempotent.
    """
    if not d.primitives and not d.containers and not d.intervals:
        raise DepictionError("E_EMPTY", f"depiction '{d.name}' has no components; neutral point undefined")

    shift = []
    for a in range(3):
        lows = [p.bounds.min[a] for p in d.primitives]
        lows += [c.bounds.min[a] for c in d.containers]
        lows += [iv.start for iv in d.intervals if iv.axis == a]
        shift.append(min(lows) if lows else 0.0)
    return translated(d, Vec3(-shift[0], -shift[1], -shift[2]))


def translated(d: GenericDepiction, offset: Vec3) -> GenericDepiction:
    """Copy of the depiction with all geometry shifted by ``offset``."""
    primitives = []
    for p in d.primitives:
        if p.endpoints is not None:
            moved = (p.endpoints[0] + offset, p.endpoints[1] + offset)
            primitives.append(replace(p, bounds=None, endpoints=moved))
        else:
            primitives.append(replace(p, bounds=p.bounds.translated(offset)))
    containers = [replace(c, bounds=c.bounds.translated(offset)) for c in d.containers]
    intervals = [
        replace(iv, start=iv.start + offset[iv.axis], end=iv.end + offset[iv.axis])
        for iv in d.intervals
    ]
    return replace(d, primitives=tuple(primitives), containers=tuple(containers), intervals=tuple(intervals))


def interface_compatible(a: GenericDepiction, b: GenericDepiction) -> bool:
    """Two depictions can replace each other iff their container name sets match."""
    return a.container_names() == b.container_names()


# --- JSON document format ---------------------------------------------------


def parse_depiction(doc: Any) -> GenericDepiction:
    """Parse a depiction document (already JSON-decoded). Strict about fields."""
    top = documents.check_fields(
        doc, "depiction", ["name"], ["materials", "primitives", "containers", "intervals"]
    )
    name = documents.as_string(top["name"], "depiction.name", nonempty=True)

    materials = []
    for i, m in enumerate(documents.as_array(top.get("materials", []), "materials")):
        where = f"materials[{i}]"
        documents.check_fields(m, where, ["id", "kind"], ["rgba", "path"])
        kind = documents.as_string(m["kind"], f"{where}.kind")
        rgba = None
        if "rgba" in m:
            arr = documents.as_array(m["rgba"], f"{where}.rgba")
            rgba = tuple(documents.as_number(v, f"{where}.rgba[{j}]") for j, v in enumerate(arr))
        path = documents.as_string(m["path"], f"{where}.path") if "path" in m else None
        try:
            materials.append(
                Material(documents.as_string(m["id"], f"{where}.id"), kind, rgba=rgba, path=path)
            )
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    primitives = []
    for i, p in enumerate(documents.as_array(top.get("primitives", []), "primitives")):
        where = f"primitives[{i}]"
        documents.check_fields(
            p, where, ["kind"], ["min", "size", "rot", "material", "content", "mesh", "endpoints"]
        )
        kind = documents.as_string(p["kind"], f"{where}.kind")
        bounds = None
        if "min" in p or "size" in p:
            if "min" not in p or "size" not in p:
                raise DocumentError(f"{where} needs both 'min' and 'size'")
            bounds = Aabb(
                documents.as_vec3(p["min"], f"{where}.min"),
                documents.as_vec3(p["size"], f"{where}.size"),
            )
        rot = IDENTITY_QUAT
        if "rot" in p:
            arr = documents.as_array(p["rot"], f"{where}.rot")
            if len(arr) != 4:
                raise DocumentError(f"{where}.rot must have 4 components")
            rot = tuple(documents.as_number(v, f"{where}.rot[{j}]") for j, v in enumerate(arr))
        endpoints = None
        if "endpoints" in p:
            arr = documents.as_array(p["endpoints"], f"{where}.endpoints")
            if len(arr) != 2:
                raise DocumentError(f"{where}.endpoints must have 2 points")
            endpoints = (
                documents.as_vec3(arr[0], f"{where}.endpoints[0]"),
                documents.as_vec3(arr[1], f"{where}.endpoints[1]"),
            )
        if endpoints is None and bounds is None:
            raise DocumentError(f"{where} needs 'min' and 'size'")
        material = documents.as_string(p["material"], f"{where}.material") if "material" in p else None
        content = documents.as_string(p["content"], f"{where}.content") if "content" in p else None
        mesh = documents.as_string(p["mesh"], f"{where}.mesh") if "mesh" in p else None
        try:
            primitives.append(
                Primitive(
                    kind,
                    bounds=bounds,
                    rotation=rot,
                    material=material,
                    content=content,
                    mesh=mesh,
                    endpoints=endpoints,
                )
            )
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    containers = []
    for i, c in enumerate(documents.as_array(top.get("containers", []), "containers")):
        where = f"containers[{i}]"
        documents.check_fields(c, where, ["name", "min", "size"])
        try:
            containers.append(
                Container(
                    documents.as_string(c["name"], f"{where}.name"),
                    Aabb(
                        documents.as_vec3(c["min"], f"{where}.min"),
                        documents.as_vec3(c["size"], f"{where}.size"),
                    ),
                )
            )
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    intervals = []
    for i, iv in enumerate(documents.as_array(top.get("intervals", []), "intervals")):
        where = f"intervals[{i}]"
        documents.check_fields(iv, where, ["axis", "start", "end"])
        axis = documents.as_string(iv["axis"], f"{where}.axis")
        try:
            a = axis_index(axis)
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        intervals.append(
            StretchInterval(
                a,
                documents.get_number(iv, "start", where),
                documents.get_number(iv, "end", where),
            )
        )

    return GenericDepiction(
        name,
        materials=tuple(materials),
        primitives=tuple(primitives),
        containers=tuple(containers),
        intervals=tuple(intervals),
    )


def load_depiction(path: str | Path) -> GenericDepiction:
    return parse_depiction(documents.load_path(path))
