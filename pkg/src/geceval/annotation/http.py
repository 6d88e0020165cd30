"""HTTP JSON API over the annotation service.

Endpoints:
    POST /sessions {"annotator_id": str, "seed"?: int} -> {"session_id": str}
    GET  /sessions/{id}/next                 -> step payload or completion
    POST /items/{id}/postedit {"session_id", "text"}
    POST /items/{id}/meaning  {"session_id", "matches"}
    POST /items/{id}/scores   {"session_id", "grammaticality", "fluency", "meaning"}
    GET  /export?annotator=...               -> annotation corpus file (text)
    GET  /agreement?a=...&b=...&dimension=...

Contract violations map to 409 (wrong workflow state), 422 (bad values)
and 400 (unknown ids / malformed input).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import (
    FileResponse,
    JSONResponse,
    PlainTextResponse,
    RedirectResponse,
)
from pydantic import BaseModel

from geceval.annotation.service import AnnotationService
from geceval.errors import InputError, StateViolationError, ValidationError


class SessionRequest(BaseModel):
    annotator_id: str
    seed: int | None = None


class PostEditRequest(BaseModel):
    session_id: str
    text: str


class MeaningRequest(BaseModel):
    session_id: str
    matches: bool


class ScoresRequest(BaseModel):
    session_id: str
    grammaticality: int | str | None = None
    fluency: int | str | None = None
    meaning: int | str | None = None


def create_app(service: AnnotationService, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="geceval annotation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(StateViolationError)
    async def _state_violation(request: Request, exc: StateViolationError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(InputError)
    async def _input(request: Request, exc: InputError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.post("/sessions")
    def open_session(req: SessionRequest):
        session_id = service.open_session(req.annotator_id, seed=req.seed)
        return {"session_id": session_id}

    @app.get("/sessions/{session_id}/next")
    def next_item(session_id: str):
        return service.next_item(session_id)

    @app.post("/items/{item_id}/postedit")
    def submit_postedit(item_id: str, req: PostEditRequest):
        return service.submit_postedit(req.session_id, item_id, req.text)

    @app.post("/items/{item_id}/meaning")
    def confirm_meaning(item_id: str, req: MeaningRequest):
        return service.confirm_meaning(req.session_id, item_id, req.matches)

    @app.post("/items/{item_id}/scores")
    def submit_scores(item_id: str, req: ScoresRequest):
        return service.submit_scores(
            req.session_id, item_id, req.grammaticality, req.fluency, req.meaning
        )

    @app.get("/export")
    def export(annotator: str | None = None):
        return PlainTextResponse(service.export(annotator))

    @app.get("/agreement")
    def agreement(a: str, b: str, dimension: str | None = None):
        return service.agreement(a, b, dimension)

    if ui_dir is not None:
        ui_path = Path(ui_dir)

        @app.get("/")
        def index_redirect():
            return RedirectResponse("/ui/")

        @app.get("/ui/")
        def index():
            return FileResponse(ui_path / "index.html")

        @app.get("/ui/{file_path:path}")
        def ui_asset(file_path: str):
            target = (ui_path / file_path).resolve()
            if not str(target).startswith(str(ui_path.resolve())) or not target.is_file():
                return JSONResponse(status_code=404, content={"error": "not found"})
            return FileResponse(target)

    return app
