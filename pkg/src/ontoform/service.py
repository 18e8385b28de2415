"""HTTP/JSON facade over the form engine.

Sessions live on disk, one JSON document each, written before any
mutation is acknowledged; a restarted service picks them up where they
were. Reads never write. Mutations on one session are serialized by a
per-session lock; the ontology graph is shared read-only.
"""

from __future__ import annotations

import json
import os
import re
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from ontoform.axioms import validate_ontology
from ontoform.errors import (
    CorruptSession,
    CyclicDefinition,
    NotAProduct,
    OntoformError,
    OntologyMismatch,
    SessionComplete,
    StaleForm,
    UnknownClass,
    ValidationFailed,
)
from ontoform.export import instance_tree, to_html, to_rdf
from ontoform.graph import Graph
from ontoform.orchestrator import (
    FormAnswer,
    Session,
    SessionState,
    coerce_values,
    current_form,
    list_products,
    load_session,
    save_session,
    start_session,
    submit_form,
)
from ontoform.terms import Iri
from ontoform.turtle import parse_turtle

_SESSION_ID = re.compile(r"[A-Za-z0-9_-]{1,64}")

# Published error code enumeration; the web client switches on these.
ERROR_CODES = (
    "BAD_REQUEST",
    "UNKNOWN_CLASS",
    "NOT_A_PRODUCT",
    "SESSION_NOT_FOUND",
    "SESSION_EXISTS",
    "SESSION_COMPLETE",
    "STALE_FORM",
    "CONFLICT",
    "VALIDATION_FAILED",
    "CYCLIC_DEFINITION",
    "ONTOLOGY_MISMATCH",
    "CORRUPT_SESSION",
    "ENGINE_ERROR",
)


class ApiError(Exception):
    """Error carrying its HTTP representation."""

    def __init__(self, status: int, code: str, message: str, details: list | None = None):
        assert code in ERROR_CODES
        self.status = status
        self.code = code
        self.message = message
        self.details = details
        super().__init__(message)

    def body(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details is not None:
            out["details"] = self.details
        return out


def _map_engine_error(exc: OntoformError) -> ApiError:
    if isinstance(exc, ValidationFailed):
        details = [{"field": f, "message": m} for f, m in exc.field_errors]
        return ApiError(422, "VALIDATION_FAILED", "some values were rejected", details)
    if isinstance(exc, CyclicDefinition):
        return ApiError(422, "CYCLIC_DEFINITION", str(exc))
    if isinstance(exc, StaleForm):
        return ApiError(409, "STALE_FORM", str(exc))
    if isinstance(exc, SessionComplete):
        return ApiError(409, "SESSION_COMPLETE", str(exc))
    if isinstance(exc, NotAProduct):
        return ApiError(422, "NOT_A_PRODUCT", str(exc))
    if isinstance(exc, UnknownClass):
        return ApiError(404, "UNKNOWN_CLASS", str(exc))
    if isinstance(exc, OntologyMismatch):
        return ApiError(409, "ONTOLOGY_MISMATCH", str(exc))
    if isinstance(exc, CorruptSession):
        return ApiError(500, "CORRUPT_SESSION", str(exc))
    return ApiError(500, "ENGINE_ERROR", str(exc))


class SessionStore:
    """One JSON file per session, atomically replaced on every change."""

    def __init__(self, directory: Path, graph: Graph):
        self.directory = directory
        self.graph = graph
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        directory.mkdir(parents=True, exist_ok=True)

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        if not _SESSION_ID.fullmatch(session_id):
            raise ApiError(404, "SESSION_NOT_FOUND", f"no session {session_id!r}")
        return self.directory / f"{session_id}.json"

    def exists(self, session_id: str) -> bool:
        return _SESSION_ID.fullmatch(session_id) is not None and self._path(session_id).exists()

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ApiError(404, "SESSION_NOT_FOUND", f"no session {session_id!r}") from None
        except (OSError, ValueError) as exc:
            raise ApiError(500, "CORRUPT_SESSION", f"cannot read session: {exc}") from exc
        return load_session(document, self.graph)

    def save(self, session: Session) -> None:
        path = self._path(session.session_id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(
            json.dumps(save_session(session), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        os.replace(tmp, path)


def _require_object(payload: object) -> dict:
    if not isinstance(payload, dict):
        raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
    return payload


def _progress(session: Session) -> dict:
    return {"answered": len(session.answers), "pending": len(session.frontier)}


def _form_or_none(session: Session) -> dict | None:
    if session.state is SessionState.COMPLETE:
        return None
    return current_form(session).as_dict()


def _session_view(session: Session, graph: Graph) -> dict:
    return {
        "session_id": session.session_id,
        "state": session.state.value,
        "revision": len(session.answers),
        "progress": _progress(session),
        "product": {"iri": session.product.value, "label": graph.label_of(session.product)},
        "tree": instance_tree(session),
    }


def create_app(graph: Graph, root: Iri, sessions_dir: Path | str) -> FastAPI:
    """Wire the engine to HTTP routes; the ontology must already validate."""
    app = FastAPI(title="ontoform", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(Path(sessions_dir), graph)

    @app.exception_handler(ApiError)
    async def on_api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.exception_handler(OntoformError)
    async def on_engine_error(_request: Request, exc: OntoformError) -> JSONResponse:
        mapped = _map_engine_error(exc)
        return JSONResponse(status_code=mapped.status, content=mapped.body())

    @app.get("/api/products")
    def products() -> list[dict]:
        return [
            {"iri": iri.value, "label": label}
            for iri, label in list_products(graph, root)
        ]

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request) -> dict:
        payload = _require_object(await _json_body(request))
        product = payload.get("product")
        if not isinstance(product, str) or not product:
            raise ApiError(400, "BAD_REQUEST", "field 'product' must be a class identifier")
        session_id = payload.get("session_id")
        if session_id is None:
            session_id = uuid.uuid4().hex
        elif not isinstance(session_id, str) or not _SESSION_ID.fullmatch(session_id):
            raise ApiError(400, "BAD_REQUEST", "session_id must match [A-Za-z0-9_-]{1,64}")
        with store.lock_for(session_id):
            if store.exists(session_id):
                raise ApiError(409, "SESSION_EXISTS", f"session {session_id!r} already exists")
            session = start_session(graph, Iri(product), root, session_id=session_id)
            store.save(session)
        return {
            "session_id": session.session_id,
            "revision": 0,
            "state": session.state.value,
            "form": _form_or_none(session),
        }

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        with store.lock_for(session_id):
            session = store.load(session_id)
        return _session_view(session, graph)

    @app.get("/api/sessions/{session_id}/form")
    def get_form(session_id: str) -> dict:
        with store.lock_for(session_id):
            session = store.load(session_id)
        if session.state is SessionState.COMPLETE:
            return {"state": SessionState.COMPLETE.value}
        return current_form(session).as_dict()

    @app.post("/api/sessions/{session_id}/answers")
    async def post_answer(session_id: str, request: Request) -> dict:
        payload = _require_object(await _json_body(request))
        revision = payload.get("revision")
        form_id = payload.get("form_id")
        values = payload.get("values")
        if not isinstance(revision, int) or isinstance(revision, bool):
            raise ApiError(400, "BAD_REQUEST", "field 'revision' must be an integer")
        if not isinstance(form_id, str):
            raise ApiError(400, "BAD_REQUEST", "field 'form_id' must be a string")
        if not isinstance(values, dict):
            raise ApiError(400, "BAD_REQUEST", "field 'values' must be an object")

        with store.lock_for(session_id):
            session = store.load(session_id)
            current = len(session.answers)
            if revision != current:
                raise ApiError(
                    409,
                    "CONFLICT",
                    f"session is at revision {current}, request targeted {revision}",
                )
            submit_form(session, FormAnswer(form_id, coerce_values(values)))
            store.save(session)
        return {
            "revision": len(session.answers),
            "state": session.state.value,
            "progress": _progress(session),
            "form": _form_or_none(session),
        }

    @app.get("/api/sessions/{session_id}/export")
    def export_session(session_id: str, format: str = "ttl") -> Response:
        if format not in ("ttl", "html"):
            raise ApiError(400, "BAD_REQUEST", "format must be 'ttl' or 'html'")
        with store.lock_for(session_id):
            session = store.load(session_id)
        if format == "ttl":
            content, media = to_rdf(session), "text/turtle; charset=utf-8"
        else:
            content, media = to_html(session), "text/html; charset=utf-8"
        return Response(
            content=content,
            media_type=media,
            headers={
                "Content-Disposition": f'attachment; filename="session-{session_id}.{format}"'
            },
        )

    return app


async def _json_body(request: Request) -> object:
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "BAD_REQUEST", "request body is not valid JSON") from None


def load_ontology(path: Path | str) -> Graph:
    """Parse and validate an ontology file for serving."""
    graph = parse_turtle(Path(path).read_text(encoding="utf-8"))
    validate_ontology(graph)
    return graph


def serve(
    ontology_path: Path | str,
    host: str,
    port: int,
    sessions_dir: Path | str,
    root: Iri,
) -> None:
    """Blocking entry point: load, validate, and run the HTTP service."""
    import uvicorn

    graph = load_ontology(ontology_path)
    if not isinstance(root, Iri):
        raise UnknownClass(f"{root} is not a class identifier")
    app = create_app(graph, root, sessions_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
