"""HTTP service: chat, palette editing, resolution, mesh preview, export, legend.

Sessions are held in memory only; there is no database and no on-disk state,
so ending a session (or the process) destroys every trace of the
conversation. Geometry endpoints are stateless: their responses depend only
on the request body.
"""

from __future__ import annotations

import io
import json
import threading
import time
import uuid
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import PhemotionError, ProviderUnavailable
from .manifest import write_manifest
from .mesh import GenSpec, generate_mesh, legend_specs
from .objio import write_obj
from .palette import (
    Binding,
    EditEvent,
    EmotionToken,
    MappingMatrix,
    Palette,
    Provenance,
    ShapeParameterId,
    ShapeParams,
    apply_edit,
    resolve_parameters,
)
from .pipeline import (
    ChatSession,
    Provider,
    ProviderConfig,
    elicit_reply,
    extract_tokens,
    make_provider,
    score_intensity,
)

MAX_TRANSCRIPT_BYTES = 32 * 1024


@dataclass(frozen=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    provider: Optional[ProviderConfig] = None
    max_sessions: int = 64
    preview_subdivision: int = 4
    session_idle_seconds: float = 1800.0

    def __post_init__(self):
        if not 0 < self.port < 65536:
            raise ValueError(f"invalid port {self.port}")

    @classmethod
    def from_dict(cls, doc: dict) -> "ServerConfig":
        doc = dict(doc)
        provider_doc = doc.pop("provider", None)
        provider = ProviderConfig(**provider_doc) if provider_doc else None
        return cls(provider=provider, **doc)

    @classmethod
    def from_file(cls, path) -> "ServerConfig":
        return cls.from_dict(json.loads(Path(path).read_text("utf-8")))


@dataclass
class _SessionState:
    chat: ChatSession
    palette: Palette = field(default_factory=Palette)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


# -- request bodies ----------------------------------------------------------

class ChatBody(BaseModel):
    session_id: str
    message: str = ""
    nudge: bool = False


class ExtractBody(BaseModel):
    session_id: str


class ScoreBody(BaseModel):
    session_id: str
    labels: list[str]


class EventBody(BaseModel):
    kind: str
    target_label: str
    payload: Union[float, str, None] = None
    sequence: int


class EditBody(BaseModel):
    session_id: str
    event: EventBody


class TokenBody(BaseModel):
    label: str
    intensity: float
    provenance: str = "user_added"


class BindingBody(BaseModel):
    token: str
    parameter: str


class ResolveBody(BaseModel):
    palette: list[TokenBody]
    bindings: list[BindingBody]


class ParamsBody(BaseModel):
    number_of_waves: int = 0
    global_distortion: float = 0.0
    global_frequency: float = 0.5
    surface_distortion: float = 0.0
    surface_frequency: float = 2.0


class MeshBody(BaseModel):
    params: ParamsBody
    seed: int = 0
    subdivision: Optional[int] = Field(default=None, description="defaults to the preview setting")


class ExportBody(BaseModel):
    palette: list[TokenBody]
    bindings: list[BindingBody]
    seed: int = 0
    subdivision: Optional[int] = None


# -- helpers -----------------------------------------------------------------

def _params_from_body(body: ParamsBody) -> ShapeParams:
    return ShapeParams(
        waves=body.number_of_waves,
        global_distortion=body.global_distortion,
        global_frequency=body.global_frequency,
        surface_distortion=body.surface_distortion,
        surface_frequency=body.surface_frequency,
    )


def _matrix_from_bodies(tokens: list[TokenBody], bindings: list[BindingBody]) -> MappingMatrix:
    palette = Palette.seeded(
        EmotionToken(t.label, t.intensity, Provenance(t.provenance)) for t in tokens
    )
    matrix = MappingMatrix(
        palette,
        tuple(Binding(b.token, ShapeParameterId.from_key(b.parameter)) for b in bindings),
    )
    matrix.validate()
    return matrix


def _resolved_json(params: ShapeParams) -> dict:
    return {
        "number_of_waves": params.waves,
        "global_distortion": params.global_distortion,
        "global_frequency": params.global_frequency,
        "surface_distortion": params.surface_distortion,
        "surface_frequency": params.surface_frequency,
    }


def _palette_json(palette: Palette) -> dict:
    return {
        "tokens": [
            {
                "label": t.label,
                "intensity": t.intensity,
                "provenance": t.provenance.value,
                "renamed": t.renamed,
            }
            for t in palette.tokens
        ],
        "log_length": len(palette.edit_log),
    }


def _deterministic_zip(entries: dict[str, bytes]) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
        for name, data in entries.items():
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, data)
    return buf.getvalue()


def create_app(config: Optional[ServerConfig] = None) -> FastAPI:
    """Build the application with its own private session store."""
    cfg = config or ServerConfig()
    provider: Optional[Provider] = make_provider(cfg.provider) if cfg.provider else None

    app = FastAPI(title="phemotion", version="0.1.0")
    sessions: dict[str, _SessionState] = {}
    store_lock = threading.Lock()

    @app.exception_handler(PhemotionError)
    async def _domain_error(_req: Request, exc: PhemotionError):
        status = 503 if isinstance(exc, ProviderUnavailable) else 400
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(_req: Request, exc: ValueError):
        return JSONResponse(status_code=400,
                            content={"error": "ValueError", "detail": str(exc)})

    def _evict_idle() -> None:
        now = time.monotonic()
        with store_lock:
            stale = [sid for sid, st in sessions.items()
                     if now - st.last_access > cfg.session_idle_seconds]
            for sid in stale:
                del sessions[sid]

    def _http_error(status: int, detail: str) -> HTTPException:
        return HTTPException(status_code=status, detail=detail)

    def _get_session(session_id: str) -> _SessionState:
        _evict_idle()
        with store_lock:
            state = sessions.get(session_id)
            if state is None:
                raise _http_error(404, f"unknown session {session_id!r}")
            state.last_access = time.monotonic()
            return state

    def _require_provider() -> Provider:
        if provider is None:
            raise ProviderUnavailable("no chat provider configured")
        return provider

    def _transcript_or_413(state: _SessionState) -> str:
        transcript = state.chat.user_transcript()
        if len(transcript.encode("utf-8")) > MAX_TRANSCRIPT_BYTES:
            raise _http_error(413, "transcript exceeds 32 KiB")
        return transcript

    # -- sessions ------------------------------------------------------------

    @app.post("/api/session")
    def create_session():
        _evict_idle()
        with store_lock:
            if len(sessions) >= cfg.max_sessions:
                raise _http_error(503, "session limit reached")
            sid = uuid.uuid4().hex
            sessions[sid] = _SessionState(chat=ChatSession(session_id=sid))
        return {"session_id": sid}

    @app.delete("/api/session/{session_id}")
    def delete_session(session_id: str):
        with store_lock:
            if session_id not in sessions:
                raise _http_error(404, f"unknown session {session_id!r}")
            del sessions[session_id]
        return {"evicted": True}

    # -- conversation --------------------------------------------------------

    @app.post("/api/chat")
    def chat(body: ChatBody):
        state = _get_session(body.session_id)
        prov = _require_provider()
        with state.lock:
            if not body.nudge:
                if not body.message.strip():
                    raise _http_error(400, "message is empty")
                current = len(state.chat.user_transcript().encode("utf-8"))
                if current + len(body.message.encode("utf-8")) > MAX_TRANSCRIPT_BYTES:
                    raise _http_error(413, "transcript exceeds 32 KiB")
            reply = elicit_reply(state.chat, body.message, prov, nudge=body.nudge)
        return {"reply": reply}

    @app.post("/api/extract")
    def extract(body: ExtractBody):
        state = _get_session(body.session_id)
        prov = _require_provider()
        with state.lock:
            transcript = _transcript_or_413(state)
            if not transcript.strip():
                raise _http_error(400, "session has no transcript yet")
            result = extract_tokens(transcript, prov)
            state.palette = Palette.seeded(
                EmotionToken(t.label, t.intensity, Provenance.AI_SUGGESTED)
                for t in result.tokens
            )
            return {
                "tokens": [{"label": t.label, "intensity": t.intensity}
                           for t in result.tokens]
            }

    @app.post("/api/score")
    def score(body: ScoreBody):
        state = _get_session(body.session_id)
        prov = _require_provider()
        with state.lock:
            transcript = _transcript_or_413(state)
            if not transcript.strip():
                raise _http_error(400, "session has no transcript yet")
            scored = score_intensity(transcript, body.labels, prov)
        return {"intensities": [{"label": s.label, "intensity": s.intensity}
                                for s in scored]}

    # -- palette -------------------------------------------------------------

    @app.post("/api/palette/edit")
    def palette_edit(body: EditBody):
        state = _get_session(body.session_id)
        with state.lock:
            event = EditEvent(
                kind=body.event.kind,
                target_label=body.event.target_label,
                payload=body.event.payload,
                sequence=body.event.sequence,
            )
            state.palette = apply_edit(state.palette, event)
            return _palette_json(state.palette)

    # -- geometry (stateless) --------------------------------------------------

    @app.post("/api/resolve")
    def resolve(body: ResolveBody):
        matrix = _matrix_from_bodies(body.palette, body.bindings)
        return _resolved_json(resolve_parameters(matrix))

    @app.post("/api/mesh")
    def mesh(body: MeshBody, request: Request):
        subdivision = cfg.preview_subdivision if body.subdivision is None else body.subdivision
        spec = GenSpec(params=_params_from_body(body.params),
                       seed=body.seed, subdivision=subdivision)
        result = generate_mesh(spec)
        accept = request.headers.get("accept", "")
        if "text/plain" in accept:
            return Response(content=write_obj(result), media_type="text/plain")
        return {
            "positions": result.vertices.ravel().tolist(),
            "normals": result.normals.ravel().tolist(),
            "indices": result.faces.ravel().tolist(),
            "vertex_count": len(result.vertices),
            "face_count": len(result.faces),
        }

    @app.post("/api/export")
    def export(body: ExportBody):
        subdivision = cfg.preview_subdivision if body.subdivision is None else body.subdivision
        matrix = _matrix_from_bodies(body.palette, body.bindings)
        spec = GenSpec(params=resolve_parameters(matrix),
                       seed=body.seed, subdivision=subdivision)
        payload = _deterministic_zip({
            "shape.obj": write_obj(generate_mesh(spec)),
            "manifest.json": write_manifest(matrix, spec),
        })
        return Response(
            content=payload,
            media_type="application/zip",
            headers={"Content-Disposition": 'attachment; filename="phemotion_export.zip"'},
        )

    @app.get("/api/legend")
    def legend(rows: int, cols: int, seed: int = 0, subdivision: int = 3):
        cells = legend_specs(rows, cols, seed=seed, subdivision=subdivision)
        return {
            "rows": rows,
            "cols": cols,
            "seed": seed,
            "subdivision": subdivision,
            "cells": [
                {"row": i, "col": j, "params": _resolved_json(spec.params)}
                for (i, j), spec in cells
            ],
        }

    return app
