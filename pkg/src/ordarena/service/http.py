"""HTTP+JSON session API consumed by the arena frontend and by scripts."""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ordarena import ordinal
from ordarena.service.state import ServiceError, SessionStore

SNAPSHOT_ENV = "ORDARENA_SNAPSHOT"


def _error_response(exc: ServiceError) -> JSONResponse:
    return JSONResponse(status_code=exc.http_status,
                        content={"error": {"code": exc.code, "message": str(exc)}})


def create_app(store: SessionStore | None = None, static_dir: str | None = None) -> FastAPI:
    store = store or SessionStore()
    app = FastAPI(title="ordarena", version="0.1.0")
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError):
        return _error_response(exc)

    @app.post("/sessions", status_code=201)
    async def create_session(spec: dict):
        session = store.create(spec)
        return session.state_json()

    @app.get("/sessions")
    async def list_sessions():
        return {"sessions": store.list()}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return store.get(session_id).state_json()

    @app.post("/sessions/{session_id}/moves")
    async def post_move(session_id: str, move: dict):
        session = store.get(session_id)
        session.post_move(move)
        return session.state_json()

    @app.delete("/sessions/{session_id}", status_code=204)
    async def delete_session(session_id: str):
        store.delete(session_id)

    @app.get("/parse")
    async def parse_notation(text: str = ""):
        try:
            value = ordinal.parse(text)
        except ordinal.OrdinalSyntaxError as exc:
            return {"ok": False, "error": str(exc), "position": exc.position}
        except ordinal.OrdinalError as exc:
            return {"ok": False, "error": str(exc), "position": 0}
        return {"ok": True, "canonical": ordinal.format_ord(value),
                "json": ordinal.to_json(value)}

    @app.get("/health")
    async def health():
        return {"ok": True}

    candidates = [static_dir] if static_dir else []
    here = Path(__file__).resolve()
    candidates.append(str(here.parents[3] / "frontend" / "dist"))
    candidates.append(str(here.parents[4] / "frontend" / "dist"))
    for cand in candidates:
        if cand and os.path.isdir(cand):
            app.mount("/ui", StaticFiles(directory=cand, html=True), name="ui")
            break
    return app
