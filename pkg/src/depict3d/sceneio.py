"""Scene serialization and the shipped example-language fixtures."""

from __future__ import annotations

import json
from pathlib import Path

from . import documents
from .codegen import fmt6
from .depiction import GenericDepiction, load_depiction, validate
from .errors import DepictionError
from .layout import LayoutScene
from .program import LanguageDef, Program, check_program, parse_language, parse_program

FIXTURE_NAMES = ("molecule", "sam", "petri", "music", "vehicles")

SCENE_EXTENSION = ".scene.json"


def _jtext(value) -> str:
    """Compact JSON with floats emitted as fixed 6-decimal numbers."""
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt6(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_jtext(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_jtext(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def export_scene(scene: LayoutScene) -> str:
    """Deterministic JSON for a scene: nodes sorted by id, 6-decimal numbers."""
    nodes = []
    for n in sorted(scene.nodes, key=lambda n: n.id):
        record = {
            "id": n.id,
            "owner": n.owner,
            "kind": n.kind,
            "min": list(n.min.to_tuple()),
            "size": list(n.size.to_tuple()),
            "rot": [float(v) for v in n.rotation],
            "material": n.material,
        }
        if n.content is not None:
            record["content"] = n.content
        if n.endpoints is not None:
            record["endpoints"] = [list(p.to_tuple()) for p in n.endpoints]
        nodes.append(record)
    containers = [
        {
            "owner": b.owner,
            "name": b.name,
            "min": list(b.min.to_tuple()),
            "size": list(b.size.to_tuple()),
        }
        for b in scene.containers
    ]
    return _jtext({"nodes": nodes, "containers": containers})


def fixtures_root() -> Path:
    return Path(__file__).parent / "fixtures"


def load_depictions_dir(directory: str | Path) -> dict[str, GenericDepiction]:
    """All depiction documents in a directory, keyed by depiction name."""
    out: dict[str, GenericDepiction] = {}
    for path in sorted(Path(directory).glob("*.json")):
        dep = load_depiction(path)
        if dep.name in out:
            raise DepictionError("E_DUP_NAME", f"duplicate depiction name '{dep.name}'")
        out[dep.name] = dep
    return out


def load_language_file(path: str | Path) -> LanguageDef:
    """Load a language document, resolving its depictions from the
    ``depictions/`` directory next to the file."""
    path = Path(path)
    dep_dir = path.parent / "depictions"
    depictions = load_depictions_dir(dep_dir) if dep_dir.is_dir() else {}
    return parse_language(documents.load_path(path), depictions)


def load_fixture(name: str) -> tuple[LanguageDef, Program, dict[str, GenericDepiction]]:
    """One of the shipped example languages, parsed and validated."""
    if name not in FIXTURE_NAMES:
        raise DepictionError(
            "E_UNKNOWN_FIXTURE",
            f"unknown fixture '{name}'; available: {', '.join(FIXTURE_NAMES)}",
        )
    base = fixtures_root() / name
    depictions = load_depictions_dir(base / "depictions")
    for dep in depictions.values():
        diagnostics = validate(dep)
        if diagnostics:
            first = diagnostics[0]
            raise DepictionError(
                "E_INVALID_DEPICTION",
                f"fixture depiction '{dep.name}': {first.code} {first.location} {first.message}",
            )
    lang = parse_language(documents.load_path(base / "language.json"), depictions)
    prog = parse_program(documents.load_path(base / "program.json"))
    check_program(lang, prog)
    return lang, prog, depictions
