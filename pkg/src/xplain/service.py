"""HTTP/JSON service exposing sessions over the same engine path as the CLI.

Endpoints:
    POST   /sessions                   body {"program": "..."} or raw text
    GET    /sessions/{id}/models?limit=N
    POST   /sessions/{id}/explain      {"atom", "mode": "in"|"out",
                                        "alternatives"?, "model"?}
    POST   /sessions/{id}/contrast     {"mode", "target", "space", "k"?}
    POST   /sessions/{id}/facts        {"assume": [...], "retract": [...]}
    DELETE /sessions/{id}

All responses are canonical JSON (sorted keys, compact separators), so
identical queries return byte-identical bodies across interfaces. Errors
are structured {"code", "message", "detail"}: 400 malformed input, 404
unknown session, 409 failed precondition, 422 capacity exceeded.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, Request, Response

from . import jsonio
from .contrastive import FactFamily, FactSpace
from .errors import (
    BaselineViolated,
    CapacityError,
    InAnswerSet,
    JustificationIncomplete,
    NotAnAnswerSet,
    NotInAnswerSet,
    ParseError,
    XplainError,
)
from .parser import parse_ground_atom
from .session import Session


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


_PRECONDITION_ERRORS = (
    NotInAnswerSet,
    InAnswerSet,
    NotAnAnswerSet,
    BaselineViolated,
    JustificationIncomplete,
)


class SessionStore:
    """In-memory sessions; mutating commands serialize on a per-session lock."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._counter = 0
        self._guard = threading.Lock()

    def create(self, program_text: str) -> str:
        session = Session(program_text)
        with self._guard:
            self._counter += 1
            sid = f"s{self._counter}"
            self._sessions[sid] = session
            self._locks[sid] = threading.Lock()
        return sid

    def get(self, sid: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            if sid not in self._sessions:
                raise ApiError(404, "unknown-session", f"no session {sid!r}")
            return self._sessions[sid], self._locks[sid]

    def delete(self, sid: str) -> None:
        with self._guard:
            if sid not in self._sessions:
                raise ApiError(404, "unknown-session", f"no session {sid!r}")
            del self._sessions[sid]
            del self._locks[sid]


def _canonical_response(payload: dict, status: int = 200) -> Response:
    return Response(
        content=jsonio.canonical(payload),
        status_code=status,
        media_type="application/json",
    )


def _space_from_obj(obj) -> FactSpace:
    if not isinstance(obj, dict) or "families" not in obj:
        raise ApiError(400, "bad-request", "space must be {'families': [...]}")
    families = []
    for entry in obj["families"]:
        try:
            facts = tuple(parse_ground_atom(f) for f in entry["facts"])
            families.append(FactFamily(entry["name"], facts, entry.get("exactly")))
        except (KeyError, TypeError) as exc:
            raise ApiError(400, "bad-request", f"malformed family: {exc}") from exc
    try:
        return FactSpace(tuple(families))
    except ValueError as exc:
        raise ApiError(400, "bad-request", str(exc)) from exc


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception as exc:
        raise ApiError(400, "bad-request", "request body is not valid JSON") from exc
    if not isinstance(body, dict):
        raise ApiError(400, "bad-request", "request body must be a JSON object")
    return body


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="xplain", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        payload = {"code": exc.code, "message": exc.message, "detail": exc.detail}
        return _canonical_response(payload, exc.status)

    def _translate(exc: Exception) -> ApiError:
        if isinstance(exc, ParseError):
            return ApiError(400, "parse-error", str(exc))
        if isinstance(exc, _PRECONDITION_ERRORS):
            return ApiError(409, "precondition-failed", str(exc))
        if isinstance(exc, CapacityError):
            return ApiError(422, "capacity-exceeded", str(exc))
        if isinstance(exc, (XplainError, ValueError)):
            return ApiError(400, "bad-request", str(exc))
        raise exc

    @app.post("/sessions")
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("application/json"):
            body = await _json_body(request)
            program_text = body.get("program")
            if not isinstance(program_text, str):
                raise ApiError(400, "bad-request", "body must carry a 'program' string")
        else:
            program_text = (await request.body()).decode("utf-8")
        try:
            sid = store.create(program_text)
        except Exception as exc:  # parse errors surface at load time
            raise _translate(exc) from exc
        return _canonical_response({"id": sid}, 201)

    @app.get("/sessions/{sid}/models")
    async def models(sid: str, limit: int | None = None):
        session, lock = store.get(sid)
        with lock:
            try:
                payload = session.models_payload(limit)
            except Exception as exc:
                raise _translate(exc) from exc
        return _canonical_response(payload)

    @app.post("/sessions/{sid}/explain")
    async def explain(sid: str, request: Request):
        body = await _json_body(request)
        session, lock = store.get(sid)
        atom = body.get("atom")
        mode = body.get("mode", "in")
        alternatives = body.get("alternatives", 1)
        model = body.get("model")
        if not isinstance(atom, str):
            raise ApiError(400, "bad-request", "explain needs an 'atom' string")
        if model is not None and not isinstance(model, list):
            raise ApiError(400, "bad-request", "'model' must be a list of atoms")
        with lock:
            try:
                payload = session.explain_payload(atom, mode, alternatives, model)
            except Exception as exc:
                raise _translate(exc) from exc
        return _canonical_response(payload)

    @app.post("/sessions/{sid}/contrast")
    async def contrast(sid: str, request: Request):
        body = await _json_body(request)
        session, lock = store.get(sid)
        mode = body.get("mode")
        target = body.get("target")
        if not isinstance(mode, str) or not isinstance(target, str):
            raise ApiError(400, "bad-request", "contrast needs 'mode' and 'target' strings")
        space = _space_from_obj(body.get("space"))
        k = body.get("k")
        with lock:
            try:
                payload = session.contrast_payload(mode, target, space, k)
            except Exception as exc:
                raise _translate(exc) from exc
        return _canonical_response(payload)

    @app.post("/sessions/{sid}/facts")
    async def facts(sid: str, request: Request):
        body = await _json_body(request)
        session, lock = store.get(sid)
        assume = body.get("assume", [])
        retract = body.get("retract", [])
        if not isinstance(assume, list) or not isinstance(retract, list):
            raise ApiError(400, "bad-request", "'assume' and 'retract' must be lists")
        with lock:
            # go through the command path so history replay covers HTTP
            # mutations too; stop at the first failing fact
            for kind, texts in (("assume", assume), ("retract", retract)):
                for text in texts:
                    output = session.execute(f"{kind} {text}")
                    if output.startswith("error:"):
                        raise ApiError(400, "bad-request", output[len("error: "):])
            payload = {"overlay": session.overlay_payload()}
        return _canonical_response(payload)

    @app.delete("/sessions/{sid}")
    async def delete_session(sid: str):
        store.delete(sid)
        return _canonical_response({"deleted": True})

    return app
