"""FastAPI application: one case base, many independent sessions.

The base file is loaded once at startup and served as an immutable
snapshot; posting a case swaps in a new snapshot without touching running
sessions.  Sessions live in memory with a sliding TTL; their event log is
the durability mechanism.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from ..casebase import SCHEMA_VERSION, CaseBase, add_case, lines_of_opinion, load_case_base
from ..errors import (
    CapExceededError,
    CaseBaseError,
    DomainError,
    FrameValidationError,
    InvalidAssertionError,
    SlotFilledError,
    TransferError,
    UnknownIdError,
)
from ..frames import case_frame_to_dict, parse_case_frame, parse_problem_frame
from ..framework import framework_to_dict
from ..session import Session, apply_transfer, assert_cq, create_session, export_log, session_state
from .schemas import AssertionRequest, CaseSummary, LinesResponse, SessionRequest, TransferRequest

DEFAULT_SESSION_TTL = 24 * 60 * 60


@dataclass
class ServiceConfig:
    base_file_path: str
    port: int = 8000
    lenient_parsing: bool = False
    cors_origins: tuple[str, ...] = ()
    ui_dir: str | None = None
    session_ttl_seconds: int = DEFAULT_SESSION_TTL

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} outside 1..65535")


@dataclass
class _SessionEntry:
    session: Session
    lock: threading.RLock = field(default_factory=threading.RLock)
    expires_at: float = 0.0


class SessionStore:
    """In-memory session registry with sliding TTL eviction."""

    def __init__(self, ttl_seconds: int = DEFAULT_SESSION_TTL):
        self._ttl = ttl_seconds
        self._entries: dict[str, _SessionEntry] = {}
        self._lock = threading.RLock()

    def _sweep(self, now: float) -> None:
        expired = [sid for sid, e in self._entries.items() if e.expires_at <= now]
        for sid in expired:
            del self._entries[sid]

    def put(self, session: Session) -> None:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            self._entries[session.id] = _SessionEntry(
                session=session, expires_at=now + self._ttl
            )

    def get(self, session_id: str) -> _SessionEntry:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            entry = self._entries.get(session_id)
            if entry is None:
                raise UnknownIdError(f"unknown session {session_id!r}")
            entry.expires_at = now + self._ttl
            return entry


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the service; raises CaseBaseError when the base won't load."""
    base = load_case_base(config.base_file_path, lenient=config.lenient_parsing)

    app = FastAPI(title="caseframe", version="0.1.0", docs_url=None, redoc_url=None)
    state = {"base": base}
    base_lock = threading.RLock()
    sessions = SessionStore(config.session_ttl_seconds)

    if config.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def stamp_schema_version(request: Request, call_next):
        response: Response = await call_next(request)
        response.headers["X-Schema-Version"] = SCHEMA_VERSION
        return response

    def _error_response(status: int, errors: list[str]) -> JSONResponse:
        return JSONResponse(status_code=status, content={"errors": errors})

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _error_response(400, [str(e.get("msg", e)) for e in exc.errors()])

    @app.exception_handler(UnknownIdError)
    async def unknown_id(request: Request, exc: UnknownIdError):
        return _error_response(404, [str(exc)])

    @app.exception_handler(SlotFilledError)
    async def slot_filled(request: Request, exc: SlotFilledError):
        return _error_response(409, [str(exc)])

    @app.exception_handler(FrameValidationError)
    async def invalid_frame(request: Request, exc: FrameValidationError):
        return _error_response(422, exc.errors)

    @app.exception_handler(CaseBaseError)
    async def invalid_base(request: Request, exc: CaseBaseError):
        return _error_response(422, exc.errors)

    @app.exception_handler(DomainError)
    async def domain_error(request: Request, exc: DomainError):
        # TransferError, InvalidAssertionError, CapExceededError
        return _error_response(422, [str(exc)])

    # -- case base ----------------------------------------------------------

    @app.get("/api/cases", response_model=list[CaseSummary])
    def list_cases():
        current: CaseBase = state["base"]
        return [CaseSummary.from_frame(f) for f in current.cases.values()]

    @app.post("/api/cases", response_model=CaseSummary, status_code=201)
    def post_case(document: dict):
        frame, report = parse_case_frame(document, lenient=False)
        if frame is None:
            raise FrameValidationError(list(report.errors))
        with base_lock:
            state["base"] = add_case(state["base"], frame)
        return CaseSummary.from_frame(frame)

    @app.get("/api/cases/{case_id:path}")
    def get_case(case_id: str):
        frame = state["base"].get(case_id)
        if frame is None:
            raise UnknownIdError(f"unknown case {case_id!r}")
        return case_frame_to_dict(frame)

    @app.get("/api/lines", response_model=LinesResponse)
    def get_lines():
        return LinesResponse(
            lines=[list(line.chain) for line in lines_of_opinion(state["base"])]
        )

    # -- sessions ------------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def post_session(body: SessionRequest):
        problem, report = parse_problem_frame(body.problem, lenient=config.lenient_parsing)
        if problem is None:
            raise FrameValidationError(list(report.errors))
        session = create_session(problem, state["base"])
        sessions.put(session)
        return session_state(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        entry = sessions.get(session_id)
        with entry.lock:
            return session_state(entry.session)

    @app.get("/api/sessions/{session_id}/framework")
    def get_framework(session_id: str):
        entry = sessions.get(session_id)
        with entry.lock:
            return framework_to_dict(entry.session.framework, entry.session.labeling)

    @app.post("/api/sessions/{session_id}/assertions")
    def post_assertion(session_id: str, body: AssertionRequest):
        entry = sessions.get(session_id)
        with entry.lock:
            assert_cq(
                entry.session,
                cq=body.cq,
                target_argument_id=body.target_argument_id,
                payload=body.payload,
                counter_to=body.counter_to,
            )
            return session_state(entry.session)

    @app.post("/api/sessions/{session_id}/transfers")
    def post_transfer(session_id: str, body: TransferRequest):
        entry = sessions.get(session_id)
        with entry.lock:
            apply_transfer(entry.session, body.argument_id)
            return session_state(entry.session)

    @app.get("/api/sessions/{session_id}/log")
    def get_log(session_id: str):
        entry = sessions.get(session_id)
        with entry.lock:
            return PlainTextResponse(
                export_log(entry.session), media_type="application/x-ndjson"
            )

    if config.ui_dir:
        if not os.path.isdir(config.ui_dir):
            raise CaseBaseError([f"ui directory {config.ui_dir!r} does not exist"])
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
