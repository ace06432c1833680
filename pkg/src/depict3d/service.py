"""Session-oriented HTTP/JSON API for the interactive 3D editor.

Each session holds a language and the current program plus bounded undo and
redo stacks. Mutations within one session are serialized behind a lock and
are atomic: a failing edit leaves the session exactly as it was. Geometric
queries carry the client's camera so the server stays the single source of
picking and selection truth.
"""

from __future__ import annotations

import json
import math
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field, field_validator, model_validator

from .depiction import GenericDepiction, parse_depiction, validate
from .errors import DepictionError, DocumentError
from .geometry import Vec3, axis_name
from .interaction import (
    Camera,
    InsertionContext,
    insertion_contexts,
    pick,
    screen_ray,
    select_cylinder,
    select_lasso,
)
from .layout import layout_program
from .program import (
    Construct,
    LanguageDef,
    Program,
    allowed_dof,
    check_program,
    insert,
    move,
    parse_language,
    parse_program,
    program_to_doc,
    remove,
)
from .sceneio import export_scene, load_fixture

UNDO_LIMIT = 256

NOT_FOUND_CODES = {"E_UNKNOWN_SESSION", "E_UNKNOWN_CONSTRUCT", "E_UNKNOWN_PARENT"}


class CameraModel(BaseModel):
    position: tuple[float, float, float]
    orientation: tuple[float, float, float, float]
    fovY: float = Field(gt=0.0, lt=math.pi)
    viewport: tuple[float, float]
    near: float = Field(gt=0.0)
    far: float

    @model_validator(mode="after")
    def _ranges(self) -> "CameraModel":
        if self.far <= self.near:
            raise ValueError("far must be greater than near")
        if self.viewport[0] <= 0 or self.viewport[1] <= 0:
            raise ValueError("viewport dimensions must be positive")
        norm = math.sqrt(sum(v * v for v in self.orientation))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError("orientation must be a unit quaternion")
        return self

    def to_camera(self) -> Camera:
        return Camera(
            position=Vec3(*self.position),
            orientation=self.orientation,
            fov_y=self.fovY,
            viewport=self.viewport,
            near=self.near,
            far=self.far,
        )


class SessionCreateRequest(BaseModel):
    language: str | dict
    program: dict | None = None
    depictions: dict[str, dict] | None = None


class InsertRequest(BaseModel):
    parentId: int
    container: str
    kind: str
    position: int | tuple[float, float, float]

    @field_validator("position", mode="before")
    @classmethod
    def _no_bool(cls, v: Any) -> Any:
        if isinstance(v, bool):
            raise ValueError("position must be an index or coordinates")
        return v


class MoveRequest(BaseModel):
    constructId: int
    delta: tuple[float, float, float]


class DeleteRequest(BaseModel):
    constructId: int


class PickRequest(BaseModel):
    px: float
    py: float
    camera: CameraModel


class SelectRequest(BaseModel):
    mode: Literal["cylinder", "lasso"]
    camera: CameraModel
    center: tuple[float, float] | None = None
    radius: float | None = Field(default=None, gt=0.0)
    polygon: list[tuple[float, float]] | None = None

    @model_validator(mode="after")
    def _mode_fields(self) -> "SelectRequest":
        if self.mode == "cylinder":
            if self.center is None or self.radius is None:
                raise ValueError("cylinder selection needs center and radius")
        else:
            if self.polygon is None:
                raise ValueError("lasso selection needs a polygon")
        return self


@dataclass
class Session:
    id: str
    language: LanguageDef
    current: Program
    undo: list[Program] = field(default_factory=list)
    redo: list[Program] = field(default_factory=list)
    camera: Camera | None = None
    lock: threading.RLock = field(default_factory=threading.RLock)

    def commit(self, program: Program) -> None:
        self.undo.append(self.current)
        if len(self.undo) > UNDO_LIMIT:
            del self.undo[0]
        self.redo.clear()
        self.current = program


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, language: LanguageDef, program: Program | None) -> str:
        if program is None:
            first_kind = next(iter(language.kinds))
            program = Program(language.name, Construct(0, first_kind))
        check_program(language, program)
        session_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._sessions[session_id] = Session(session_id, language, program)
        return session_id

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise DepictionError("E_UNKNOWN_SESSION", f"no session '{session_id}'")
        return session


def _scene_text(session: Session) -> str:
    return export_scene(layout_program(session.language, session.current))


def _scene_doc(session: Session) -> dict:
    return json.loads(_scene_text(session))


def _context_doc(ctx: InsertionContext) -> dict:
    doc: dict = {"kind": ctx.kind, "owner": ctx.owner, "container": ctx.container}
    if ctx.box is not None:
        doc["box"] = {"min": list(ctx.box.min.to_tuple()), "size": list(ctx.box.size.to_tuple())}
    if ctx.axis is not None:
        doc["axis"] = axis_name(ctx.axis)
    if ctx.range is not None:
        doc["range"] = list(ctx.range)
    if ctx.slot_index is not None:
        doc["slotIndex"] = ctx.slot_index
    if ctx.cell is not None:
        doc["cell"] = list(ctx.cell)
    return doc


def create_app() -> FastAPI:
    app = FastAPI(title="depict3d editor service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.sessions = SessionStore()
    sessions: SessionStore = app.state.sessions

    @app.exception_handler(RequestValidationError)
    async def _on_schema_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "E_SCHEMA", "location": "", "message": str(exc.errors())},
        )

    @app.exception_handler(DocumentError)
    async def _on_document_error(request: Request, exc: DocumentError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "E_DOCUMENT", "location": "", "message": str(exc)},
        )

    @app.exception_handler(DepictionError)
    async def _on_engine_error(request: Request, exc: DepictionError) -> JSONResponse:
        status = 404 if exc.code in NOT_FOUND_CODES else 409
        return JSONResponse(
            status_code=status,
            content={"code": exc.code, "location": exc.location, "message": exc.message},
        )

    @app.post("/session")
    def create_session(body: SessionCreateRequest) -> dict:
        if isinstance(body.language, str):
            language, default_program, _ = load_fixture(body.language)
        else:
            depictions: dict[str, GenericDepiction] = {}
            for name, doc in (body.depictions or {}).items():
                dep = parse_depiction(doc)
                if dep.name != name:
                    raise DocumentError(
                        f"depiction key '{name}' does not match its name '{dep.name}'"
                    )
                depictions[name] = dep
            language = parse_language(body.language, depictions)
            default_program = None
        program = parse_program(body.program) if body.program is not None else default_program
        if program is not None and program.language != language.name:
            raise DocumentError(
                f"program references language '{program.language}', session uses '{language.name}'"
            )
        session_id = sessions.create(language, program)
        return {"sessionId": session_id}

    @app.get("/session/{session_id}/scene")
    def get_scene(session_id: str) -> Response:
        session = sessions.get(session_id)
        with session.lock:
            return Response(content=_scene_text(session), media_type="application/json")

    @app.get("/session/{session_id}/language")
    def get_language(session_id: str) -> dict:
        """Static language metadata for the editor UI: the kind palette and
        each depiction's material definitions (scene nodes carry only
        material names, which are scoped to their owning depiction)."""
        session = sessions.get(session_id)
        with session.lock:
            lang = session.language
            materials: dict[str, list[dict]] = {}
            for dep_name in sorted(lang.depictions):
                records = []
                for m in lang.depictions[dep_name].materials:
                    record: dict = {"id": m.id, "kind": m.kind}
                    if m.rgba is not None:
                        record["rgba"] = list(m.rgba)
                    if m.path is not None:
                        record["path"] = m.path
                    records.append(record)
                materials[dep_name] = records
            return {
                "name": lang.name,
                "kinds": [
                    {"kind": kd.name, "depiction": kd.depiction}
                    for kd in lang.kinds.values()
                ],
                "materials": materials,
            }

    @app.get("/session/{session_id}/violations")
    def get_violations(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            diagnostics = []
            for name in sorted(session.language.depictions):
                for diag in validate(session.language.depictions[name]):
                    diagnostics.append(
                        {
                            "depiction": name,
                            "code": diag.code,
                            "location": diag.location,
                            "message": diag.message,
                        }
                    )
            return {"diagnostics": diagnostics}

    @app.get("/session/{session_id}/insertion-contexts")
    def get_insertion_contexts(session_id: str, kind: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            scene = layout_program(session.language, session.current)
            contexts = insertion_contexts(session.language, session.current, scene, kind)
            return {"contexts": [_context_doc(c) for c in contexts]}

    @app.get("/session/{session_id}/dof")
    def get_dof(session_id: str, constructId: int) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            mask = allowed_dof(session.language, session.current, constructId)
            return {
                "translate": sorted(axis_name(a) for a in mask.translate),
                "rotate": sorted(axis_name(a) for a in mask.rotate),
                "scale": mask.scale,
            }

    @app.post("/session/{session_id}/insert")
    def post_insert(session_id: str, body: InsertRequest) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            position = body.position if isinstance(body.position, int) else Vec3(*body.position)
            program, new_id = insert(
                session.language, session.current, body.parentId, body.container, body.kind, position
            )
            scene = export_scene(layout_program(session.language, program))
            session.commit(program)
            return {"newId": new_id, "scene": json.loads(scene)}

    @app.post("/session/{session_id}/move")
    def post_move(session_id: str, body: MoveRequest) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            program = move(session.language, session.current, body.constructId, Vec3(*body.delta))
            scene = export_scene(layout_program(session.language, program))
            session.commit(program)
            return {"scene": json.loads(scene)}

    @app.post("/session/{session_id}/delete")
    def post_delete(session_id: str, body: DeleteRequest) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            program = remove(session.current, body.constructId)
            scene = export_scene(layout_program(session.language, program))
            session.commit(program)
            return {"scene": json.loads(scene)}

    @app.post("/session/{session_id}/pick")
    def post_pick(session_id: str, body: PickRequest) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            camera = body.camera.to_camera()
            session.camera = camera
            scene = layout_program(session.language, session.current)
            ray = screen_ray(camera, (body.px, body.py))
            hit = pick(scene, ray)
            if hit is None:
                return {"nodeId": None, "t": None}
            node_id, t = hit
            owner = next(n.owner for n in scene.nodes if n.id == node_id)
            return {"nodeId": node_id, "t": t, "constructId": owner}

    @app.post("/session/{session_id}/select")
    def post_select(session_id: str, body: SelectRequest) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            camera = body.camera.to_camera()
            session.camera = camera
            scene = layout_program(session.language, session.current)
            if body.mode == "cylinder":
                ids = select_cylinder(scene, camera, body.center, body.radius)
            else:
                ids = select_lasso(scene, camera, body.polygon)
            return {"nodeIds": sorted(ids)}

    @app.post("/session/{session_id}/undo")
    def post_undo(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            if session.undo:
                session.redo.append(session.current)
                session.current = session.undo.pop()
            return {"scene": _scene_doc(session)}

    @app.post("/session/{session_id}/redo")
    def post_redo(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            if session.redo:
                session.undo.append(session.current)
                session.current = session.redo.pop()
            return {"scene": _scene_doc(session)}

    @app.get("/session/{session_id}/program")
    def get_program(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            return program_to_doc(session.current)

    @app.put("/session/{session_id}/program")
    def put_program(session_id: str, body: dict) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            program = parse_program(body)
            if program.language != session.language.name:
                raise DocumentError(
                    f"program references language '{program.language}',"
                    f" session uses '{session.language.name}'"
                )
            check_program(session.language, program)
            scene = export_scene(layout_program(session.language, program))
            session.commit(program)
            return {"scene": json.loads(scene)}

    return app
