"""Camera math and geometric queries behind direct manipulation.

Picking and multi-selection operate on the world-space bounding boxes in a
LayoutScene; a metaphor cast from the 2D screen (ray, cylinder, lasso) is
resolved against those boxes. All queries are pure and freely parallelizable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DepictionError
from .geometry import Aabb, Quat, Vec3, quat_conjugate, quat_norm, quat_rotate
from .layout import LayoutScene, construct_extent
from .patterns import matrix_cell_size, matrix_cells
from .program import LanguageDef, Program


@dataclass(frozen=True)
class Camera:
    """Perspective camera. Orientation rotates camera space (looking down -z,
    y up) into world space; fov_y is the full vertical field of view in
    radians; the viewport is in pixels."""

    position: Vec3
    orientation: Quat
    fov_y: float
    viewport: tuple[float, float]
    near: float
    far: float

    def __post_init__(self) -> None:
        if not 0.0 < self.fov_y < math.pi:
            raise ValueError(f"fov_y {self.fov_y} outside (0, pi)")
        w, h = self.viewport
        if w <= 0 or h <= 0:
            raise ValueError("viewport dimensions must be positive")
        object.__setattr__(self, "viewport", (float(w), float(h)))
        if not 0.0 < self.near < self.far:
            raise ValueError("camera needs 0 < near < far")
        if abs(quat_norm(self.orientation) - 1.0) > 1e-6:
            raise ValueError("camera orientation must be a unit quaternion")

    @property
    def forward(self) -> Vec3:
        return quat_rotate(self.orientation, Vec3(0.0, 0.0, -1.0))


@dataclass(frozen=True)
class Ray:
    origin: Vec3
    direction: Vec3

    def __post_init__(self) -> None:
        if abs(self.direction.norm() - 1.0) > 1e-9:
            raise ValueError("ray direction must have unit length")


def screen_ray(cam: Camera, px: tuple[float, float]) -> Ray:
    """Unproject a screen position into a world-space ray.

    Screen coordinates are continuous with the origin at the top-left corner
    (a pixel (i, j) has its center at (i + 0.5, j + 0.5)).
    """
    x, y = float(px[0]), float(px[1])
    w, h = cam.viewport
    if not (0.0 <= x <= w and 0.0 <= y <= h):
        raise DepictionError("E_OUT_OF_VIEWPORT", f"({x:g}, {y:g}) outside {w:g}x{h:g} viewport")
    ndc_x = 2.0 * x / w - 1.0
    ndc_y = 1.0 - 2.0 * y / h
    tan_half = math.tan(cam.fov_y / 2.0)
    aspect = w / h
    local = Vec3(ndc_x * tan_half * aspect, ndc_y * tan_half, -1.0)
    return Ray(cam.position, quat_rotate(cam.orientation, local).normalized())


def project_point(cam: Camera, p: Vec3) -> tuple[float, float, float]:
    """(screen x, screen y, view depth) of a world point.

    The depth is the distance along the camera's forward axis; screen
    coordinates are meaningful only for positive depth.
    """
    local = quat_rotate(quat_conjugate(cam.orientation), p - cam.position)
    depth = -local.z
    if depth == 0.0:
        return (math.inf, math.inf, 0.0)
    tan_half = math.tan(cam.fov_y / 2.0)
    w, h = cam.viewport
    aspect = w / h
    ndc_x = local.x / (depth * tan_half * aspect)
    ndc_y = local.y / (depth * tan_half)
    return ((ndc_x + 1.0) * w / 2.0, (1.0 - ndc_y) * h / 2.0, depth)


def ray_aabb_entry(ray: Ray, box_min: Vec3, box_size: Vec3) -> float | None:
    """Entry parameter of a ray against a box (slab test), or None.

    Only strictly positive entries count: rays starting inside or behind a
    box do not hit it.
    """
    t_near = -math.inf
    t_far = math.inf
    for a in range(3):
        o = ray.origin[a]
        d = ray.direction[a]
        lo = box_min[a]
        hi = lo + box_size[a]
        if d == 0.0:
            if not lo <= o <= hi:
                return None
            continue
        t0 = (lo - o) / d
        t1 = (hi - o) / d
        if t0 > t1:
            t0, t1 = t1, t0
        t_near = max(t_near, t0)
        t_far = min(t_far, t1)
        if t_near > t_far:
            return None
    return t_near if t_near > 0.0 else None


def pick(scene: LayoutScene, ray: Ray) -> tuple[int, float] | None:
    """First node hit by the ray: minimal positive entry parameter against
    the node's world box, ties broken by the smaller node id."""
    best: tuple[float, int] | None = None
    for node in scene.nodes:
        t = ray_aabb_entry(ray, node.min, node.size)
        if t is None:
            continue
        key = (t, node.id)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return (best[1], best[0])


def _corner_screens(cam: Camera, box: Aabb) -> list[tuple[float, float]] | None:
    """Projections of all eight corners, or None if any lies outside the
    near/far depth range (including behind the camera)."""
    out = []
    for corner in box.corners():
        sx, sy, depth = project_point(cam, corner)
        if not cam.near <= depth <= cam.far:
            return None
        out.append((sx, sy))
    return out


def select_cylinder(
    scene: LayoutScene, cam: Camera, center: tuple[float, float], radius: float
) -> set[int]:
    """Nodes whose boxes are entirely enclosed by the screen circle.

    A node is selected iff all eight corners of its world box project inside
    the circle and the node lies between the near and far planes.
    """
    if radius <= 0.0:
        raise ValueError("selection radius must be positive")
    cx, cy = center
    picked = set()
    for node in scene.nodes:
        screens = _corner_screens(cam, Aabb(node.min, node.size))
        if screens is None:
            continue
        if all((sx - cx) ** 2 + (sy - cy) ** 2 <= radius * radius for sx, sy in screens):
            picked.add(node.id)
    return picked


def _point_in_polygon(x: float, y: float, polygon: Sequence[tuple[float, float]]) -> bool:
    # Even-odd rule via horizontal ray crossings.
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_hit = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_hit:
                inside = not inside
    return inside


def select_lasso(
    scene: LayoutScene, cam: Camera, polygon: Sequence[tuple[float, float]]
) -> set[int]:
    """Nodes whose boxes project entirely inside the screen polygon (even-odd)."""
    if len(polygon) < 3:
        raise DepictionError("E_DEGENERATE_POLYGON", "lasso polygon needs at least 3 points")
    poly = [(float(x), float(y)) for x, y in polygon]
    picked = set()
    for node in scene.nodes:
        screens = _corner_screens(cam, Aabb(node.min, node.size))
        if screens is None:
            continue
        if all(_point_in_polygon(sx, sy, poly) for sx, sy in screens):
            picked.add(node.id)
    return picked


@dataclass(frozen=True)
class InsertionContext:
    """A highlighted region where a construct of some kind may be inserted.

    ``kind`` is one of cube (set3d: the whole container box), axis_strip
    (set1d: the container's span on the pattern axis), list_slot (one gap of
    a list), matrix_cell (one free grid cell).
    """

    kind: str
    owner: int
    container: str
    box: Aabb | None = None
    axis: int | None = None
    range: tuple[float, float] | None = None
    slot_index: int | None = None
    cell: tuple[int, int] | None = None


def _clip_box(box: Aabb, bounds: Aabb) -> Aabb | None:
    lo = []
    size = []
    for a in range(3):
        l = max(box.min[a], bounds.min[a])
        h = min(box.max[a], bounds.max[a])
        if h <= l:
            return None
        lo.append(l)
        size.append(h - l)
    return Aabb(Vec3(*lo), Vec3(*size))


def insertion_contexts(
    lang: LanguageDef, prog: Program, scene: LayoutScene, kind: str
) -> list[InsertionContext]:
    """All places where a construct of ``kind`` may legally be inserted."""
    if kind not in lang.kinds:
        raise DepictionError("E_UNKNOWN_KIND", f"kind '{kind}' is not declared")
    boxes = {(b.owner, b.name): Aabb(b.min, b.size) for b in scene.containers}
    out: list[InsertionContext] = []
    for construct in prog.root.walk():
        kd = lang.kinds[construct.kind]
        for cname, rule in kd.containers.items():
            if kind not in rule.allowed:
                continue
            box = boxes[(construct.id, cname)]
            kids = construct.children.get(cname, ())
            if rule.pattern.kind == "set3d":
                out.append(InsertionContext("cube", construct.id, cname, box=box))
            elif rule.pattern.kind == "set1d":
                a = rule.pattern.axis
                out.append(
                    InsertionContext(
                        "axis_strip",
                        construct.id,
                        cname,
                        box=box,
                        axis=a,
                        range=box.project(a),
                    )
                )
            elif rule.pattern.kind == "list":
                a = rule.pattern.axis
                gap = rule.pattern.gap
                extents = [construct_extent(lang, kid) for kid in kids]
                cursor = box.min[a]
                for slot in range(len(kids) + 1):
                    slot_box = Aabb(
                        box.min.with_axis(a, cursor),
                        box.size.with_axis(a, gap),
                    )
                    clipped = _clip_box(slot_box, box)
                    if clipped is not None:
                        out.append(
                            InsertionContext(
                                "list_slot",
                                construct.id,
                                cname,
                                box=clipped,
                                axis=a,
                                slot_index=slot,
                            )
                        )
                    if slot < len(kids):
                        cursor += gap + extents[slot][a]
            else:  # matrix
                gap = rule.pattern.gap
                taken = set(matrix_cells([kid.free_position for kid in kids]))
                if kids:
                    cell = matrix_cell_size([construct_extent(lang, kid) for kid in kids])
                    cols = 1 + max(c for c, _ in taken)
                    rows = 1 + max(r for _, r in taken)
                else:
                    cell = Vec3(
                        max(box.size.x - 2 * gap, 0.0),
                        max(box.size.y - 2 * gap, 0.0),
                        max(box.size.z - 2 * gap, 0.0),
                    )
                    cols = rows = 0
                for r in range(rows + 1):
                    for c in range(cols + 1):
                        if (c, r) in taken:
                            continue
                        cell_box = Aabb(
                            box.min + Vec3(gap + c * (cell.x + gap), gap, gap + r * (cell.z + gap)),
                            cell,
                        )
                        clipped = _clip_box(cell_box, box)
                        if clipped is not None:
                            out.append(
                                InsertionContext(
                                    "matrix_cell",
                                    construct.id,
                                    cname,
                                    box=clipped,
                                    cell=(c, r),
                                )
                            )
    return out
