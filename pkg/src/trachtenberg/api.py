"""HTTP/JSON service for the trainer UI: traces, rules, and drill sessions.

Stateless except for the drill session store; restarting against the same
store directory reloads sessions from their logs on first access.  All
error responses carry a machine-readable `error` code and a human
`message`.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import drill
from .digits import parse
from .errors import (
    ChallengeError,
    ConfigError,
    ParseError,
    PersistenceError,
    SessionNotFound,
    ValidationError,
)
from .rules import RULES, SUPPORTED_MULTIPLIERS, PositionRole, check_multiplier, multiply_by_rule
from .trace import to_structured

__all__ = ["create_app"]


def _error(status: int, code: str, message: str, **extra: Any) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message, **extra})


class SessionConfigBody(BaseModel):
    multipliers: list[int]
    min_digits: int = 1
    max_digits: int = 3
    mode: str = "guided"
    seed: int | None = None
    problem_count: int = Field(default=5, ge=1)
    ask_raw_value: bool = False


class RespondBody(BaseModel):
    challenge_id: str
    answer: dict[str, Any]


class _SessionRegistry:
    """Live sessions plus their store, with one lock per session so
    concurrent requests against the same session are serialized."""

    def __init__(self, store_dir: Path | str | None):
        self.store = drill.SessionStore(store_dir)
        self._sessions: dict[str, drill.DrillSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def add(self, session: drill.DrillSession) -> None:
        with self._registry_lock:
            self._sessions[session.session_id] = session
            self._locks[session.session_id] = threading.Lock()
        self.store.sync(session)

    def get(self, session_id: str) -> tuple[drill.DrillSession, threading.Lock]:
        with self._registry_lock:
            session = self._sessions.get(session_id)
            if session is None:
                session = self.store.load(session_id)  # raises SessionNotFound
                self._sessions[session_id] = session
            lock = self._locks.setdefault(session_id, threading.Lock())
        return session, lock


def create_app(
    store_dir: Path | str | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(title="trachtenberg", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins if cors_origins is not None else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = _SessionRegistry(store_dir)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error(exc.status_code, code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def _body_error(request: Request, exc: RequestValidationError):
        fields = [
            {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return _error(400, "validation_error", "malformed request", fields=fields)

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/rules")
    def rules():
        return {
            "multipliers": list(SUPPORTED_MULTIPLIERS),
            "rules": [
                {
                    "multiplier": m,
                    "description": spec.description,
                    "formulas": {
                        role.value: spec.formula_for(role).render(0, 0)
                        for role in PositionRole
                    },
                }
                for m, spec in sorted(RULES.items())
            ],
        }

    @app.get("/trace")
    def trace(n: str, m: int):
        try:
            check_multiplier(m)
        except Exception as exc:
            return _error(400, "unsupported_multiplier", str(exc))
        try:
            multiplicand = parse(n)
        except ParseError as exc:
            return _error(400, "invalid_number", str(exc))
        return to_structured(multiply_by_rule(multiplicand, m))

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionConfigBody):
        seed = body.seed
        if seed is None:
            import secrets

            seed = secrets.randbits(64)
        try:
            config = drill.DrillConfig(
                multipliers=tuple(body.multipliers),
                min_digits=body.min_digits,
                max_digits=body.max_digits,
                mode=drill.DrillMode(body.mode),
                seed=seed,
                problem_count=body.problem_count,
                ask_raw_value=body.ask_raw_value,
            )
            session = drill.new_session(config)
        except (ConfigError, ValueError) as exc:
            return _error(400, "invalid_config", str(exc))
        registry.add(session)
        return {
            "session_id": session.session_id,
            "config": config.to_dict(),
            "problem_count": len(session.problems),
        }

    def _with_session(session_id: str):
        return registry.get(session_id)

    @app.get("/sessions/{session_id}/next")
    def next_challenge(session_id: str):
        try:
            session, lock = _with_session(session_id)
        except SessionNotFound:
            return _error(404, "session_not_found", f"no session {session_id!r}")
        except PersistenceError as exc:
            return _error(500, "corrupt_session", str(exc))
        with lock:
            challenge = drill.next_challenge(session)
            registry.store.sync(session)
            if isinstance(challenge, drill.SessionFinished):
                return {"kind": "finished", "summary": drill.session_summary(session)}
            return {"kind": "challenge", "problem_count": len(session.problems),
                    **challenge.to_dict()}

    @app.post("/sessions/{session_id}/respond")
    def respond(session_id: str, body: RespondBody):
        try:
            session, lock = _with_session(session_id)
        except SessionNotFound:
            return _error(404, "session_not_found", f"no session {session_id!r}")
        except PersistenceError as exc:
            return _error(500, "corrupt_session", str(exc))
        with lock:
            try:
                response = drill.submit_response(session, body.challenge_id, body.answer)
            except ChallengeError as exc:
                return _error(409, "challenge_conflict", str(exc))
            except ValidationError as exc:
                return _error(400, "invalid_answer", str(exc))
            registry.store.sync(session)
            correct, total = session.score
            return {
                **response.to_dict(),
                "score": {"correct": correct, "total": total},
                "finished": session.finished,
            }

    @app.get("/sessions/{session_id}/summary")
    def summary(session_id: str):
        try:
            session, lock = _with_session(session_id)
        except SessionNotFound:
            return _error(404, "session_not_found", f"no session {session_id!r}")
        except PersistenceError as exc:
            return _error(500, "corrupt_session", str(exc))
        with lock:
            return drill.session_summary(session)

    return app
