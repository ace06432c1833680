"""Deterministic builder-call source for depictions.

Each depiction emits one text block of builder calls (add material, add
container, add stretch interval, add primitive). Geometry is normalized to
the neutral point first, so the output is invariant under translation of the
source document. Numbers are fixed 6-decimal; lines end with LF; containers
sort by name and intervals by (axis, start) so the bytes are stable under
permutation of the source arrays.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .depiction import GenericDepiction, normalize, validate
from .errors import DepictionError
from .geometry import axis_name

FILE_EXTENSION = ".gdep.txt"


def fmt6(value: float) -> str:
    """Fixed 6-decimal formatting with round-half-to-even; no negative zero."""
    out = f"{value:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _vec(v) -> str:
    return f"{fmt6(v.x)} {fmt6(v.y)} {fmt6(v.z)}"


def emit(d: GenericDepiction) -> str:
    """Builder-call text for one depiction; byte-exact and reproducible."""
    diagnostics = validate(d)
    if diagnostics:
        first = diagnostics[0]
        raise DepictionError(
            "E_INVALID_DEPICTION",
            f"depiction '{d.name}' has {len(diagnostics)} diagnostic(s);"
            f" first: {first.code} {first.location} {first.message}",
        )
    n = normalize(d)

    lines = [f"DEPICTION {n.name}"]
    for m in n.materials:
        if m.kind == "color":
            rgba = " ".join(fmt6(v) for v in m.rgba)
            lines.append(f"MATERIAL {m.id} {m.kind} {rgba}")
        else:
            lines.append(f"MATERIAL {m.id} {m.kind} {m.path}")
    for c in sorted(n.containers, key=lambda c: c.name):
        lines.append(f"CONTAINER {c.name} {_vec(c.bounds.min)} {_vec(c.bounds.size)}")
    for iv in sorted(n.intervals, key=lambda iv: (iv.axis, iv.start, iv.end)):
        lines.append(
            f"STRETCH {axis_name(iv.axis).upper()} {fmt6(iv.start)} {fmt6(iv.end)}"
        )
    for p in n.primitives:
        quat = " ".join(fmt6(v) for v in p.rotation)
        material = p.material if p.material is not None else "-"
        line = f"PRIM {p.kind} {_vec(p.bounds.min)} {_vec(p.bounds.size)} {quat} {material}"
        if p.kind == "text" and p.content:
            line += f" {p.content}"
        elif p.kind == "model3d":
            line += f" {p.mesh}"
        lines.append(line)
    lines.append("END")
    return "\n".join(lines) + "\n"


def emit_all(depictions: Iterable[GenericDepiction]) -> Mapping[str, str]:
    """Emit every depiction; the result maps names to text, keys sorted."""
    out: dict[str, str] = {}
    for d in depictions:
        if d.name in out:
            raise DepictionError("E_DUP_NAME", f"duplicate depiction name '{d.name}'")
        out[d.name] = emit(d)
    return dict(sorted(out.items()))
