"""HTTP service exposing the checker and correction sessions.

The web UI consumes this API verbatim:

    POST /v1/check {text}                  -> {flags: [{span, word, suggestions}]}
    POST /v1/sessions {text}               -> {id}
    GET  /v1/sessions/{id}/next            -> {done, flag?}
    POST /v1/sessions/{id}/action {action, replacement?, index?}
    GET  /v1/sessions/{id}/export          -> {text}
    POST /v1/userdict {word}               -> {added, size}
    GET  /v1/health                        -> {status}

Bodies are UTF-8 JSON; errors are 4xx with {error, detail}.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import greek
from .correct import Checker
from .session import (
    ACTION_CORRECT,
    ACTION_EDIT,
    ACTION_EXIT,
    ACTION_SKIP,
    ACTION_STORE,
    BadSuggestionIndex,
    CorrectionSession,
    Flag,
    SessionActive,
    SessionClosed,
    SessionError,
    check_document,
)


class CheckRequest(BaseModel):
    text: str


class SessionRequest(BaseModel):
    text: str


class ActionRequest(BaseModel):
    action: str
    replacement: str | None = None
    index: int | None = None


class UserDictRequest(BaseModel):
    word: str


def _flag_payload(flag: Flag, total: int | None = None) -> dict:
    payload = {
        "span": [flag.token.start, flag.token.end],
        "word": flag.word,
        "suggestions": [
            {"display": s.display, "class": s.error_class} for s in flag.suggestions
        ],
        "ordinal": flag.ordinal,
    }
    if total is not None:
        payload["total"] = total
    return payload


def create_app(
    checker: Checker,
    user_dict_path: Path | None = None,
    assets_dir: Path | None = None,
) -> FastAPI:
    app = FastAPI(title="glspell", docs_url=None, redoc_url=None)
    sessions: dict[str, CorrectionSession] = {}
    # Sessions share one checker; user-dictionary writes serialize here.
    user_lock = threading.Lock()

    @app.exception_handler(SessionError)
    async def _session_error(request, exc):
        status = 409 if isinstance(exc, (SessionClosed, SessionActive)) else 400
        return JSONResponse(
            {"error": type(exc).__name__, "detail": str(exc)}, status_code=status
        )

    @app.exception_handler(HTTPException)
    async def _http_error(request, exc):
        # keep the error body shape flat: {error, detail}
        if isinstance(exc.detail, dict) and "error" in exc.detail:
            payload = exc.detail
        else:
            payload = {"error": "HTTPError", "detail": str(exc.detail)}
        return JSONResponse(payload, status_code=exc.status_code)

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "records": checker.main.stats()["records"]}

    @app.post("/v1/check")
    def check(req: CheckRequest):
        flags = check_document(req.text, checker)
        return {"flags": [_flag_payload(f) for f in flags]}

    @app.post("/v1/sessions", status_code=201)
    def open_session(req: SessionRequest):
        session = CorrectionSession(req.text, checker)
        sessions[session.id] = session
        return {"id": session.id}

    def _session(session_id: str) -> CorrectionSession:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(
                404, detail={"error": "UnknownSession", "detail": session_id}
            )
        return session

    @app.get("/v1/sessions/{session_id}/next")
    def next_flag(session_id: str):
        session = _session(session_id)
        flag = session.next_flag()
        if flag is None:
            return {"done": True, "status": session.status}
        return {
            "done": False,
            "flag": _flag_payload(flag, total=session.flags_total()),
        }

    @app.post("/v1/sessions/{session_id}/action")
    def apply_action(session_id: str, req: ActionRequest):
        session = _session(session_id)
        if req.action not in (
            ACTION_SKIP, ACTION_EDIT, ACTION_STORE, ACTION_CORRECT, ACTION_EXIT,
        ):
            raise HTTPException(
                400, detail={"error": "UnknownAction", "detail": req.action}
            )
        if req.action == ACTION_STORE:
            with user_lock:
                session.apply(req.action, req.replacement, req.index)
                if user_dict_path is not None:
                    session.checker.user.save(user_dict_path)
        else:
            session.apply(req.action, req.replacement, req.index)
        return {"status": session.status}

    @app.get("/v1/sessions/{session_id}/export")
    def export(session_id: str):
        return {"text": _session(session_id).export()}

    @app.post("/v1/userdict")
    def user_add(req: UserDictRequest):
        try:
            with user_lock:
                checker.user.add(req.word)
                if user_dict_path is not None:
                    checker.user.save(user_dict_path)
        except greek.NonGreekToken as exc:
            raise HTTPException(
                400, detail={"error": "NonGreekToken", "detail": str(exc)}
            )
        return {"added": req.word, "size": len(checker.user)}

    if assets_dir is not None and Path(assets_dir).is_dir():
        app.mount("/", StaticFiles(directory=assets_dir, html=True), name="ui")
    return app
