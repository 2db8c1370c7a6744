"""HTTP session service exposing the engine to interactive clients.

Sessions live in memory, one lock each: state-changing requests on a session
are serialized, distinct sessions run in parallel. Wire bodies wrap the
persistence formats — mechanics travel as their JSON document objects,
boards as digit-grid text strings.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .corpus import REFERENCE_NAMES, load_reference
from .engine import Mode, execute_click
from .model import BoardState, Mechanic, PLAYGROUND_SIZE
from .persistence import (
    DocumentError,
    InvalidMechanicError,
    MalformedError,
    UnknownVersionError,
    decode_board,
    decode_mechanic,
    encode_board,
    encode_mechanic,
)

DEFAULT_IDLE_TTL = 3600.0


@dataclass
class Session:
    id: str
    board: BoardState
    mechanic: Mechanic
    mode: Mode = Mode.NORMAL
    revision: int = 0
    last_access: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory sessions with lazy idle eviction."""

    def __init__(self, idle_ttl: float = DEFAULT_IDLE_TTL, clock=time.monotonic):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._idle_ttl = idle_ttl
        self._clock = clock

    def create(self) -> Session:
        session = Session(
            id=uuid.uuid4().hex,
            board=BoardState.neutral(),
            mechanic=Mechanic(name="untitled"),
            last_access=self._clock(),
        )
        with self._lock:
            self._evict_idle()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._evict_idle()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = self._clock()
            return session

    def _evict_idle(self) -> None:
        now = self._clock()
        stale = [sid for sid, s in self._sessions.items() if now - s.last_access > self._idle_ttl]
        for sid in stale:
            del self._sessions[sid]


def _state_body(session: Session) -> dict:
    return {
        "id": session.id,
        "revision": session.revision,
        "mode": session.mode.value,
        "board": encode_board(session.board),
        "mechanic": json.loads(encode_mechanic(session.mechanic)),
    }


def _document_error_body(err: DocumentError) -> dict:
    if isinstance(err, UnknownVersionError):
        return {"code": "UNKNOWN_VERSION", "detail": str(err)}
    if isinstance(err, InvalidMechanicError):
        return {
            "code": "INVALID",
            "detail": str(err),
            "violations": [
                {"rule": v.rule, "command": v.command, "tile": v.tile, "message": v.message}
                for v in err.violations
            ],
        }
    return {"code": "MALFORMED", "detail": str(err)}


def create_app(idle_ttl: float = DEFAULT_IDLE_TTL, clock=time.monotonic, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tilemech service", version="1")
    store = SessionStore(idle_ttl=idle_ttl, clock=clock)
    app.state.store = store

    def not_found() -> JSONResponse:
        return JSONResponse({"detail": "unknown session"}, status_code=404)

    @app.post("/api/v1/sessions", status_code=201)
    def create_session() -> dict:
        return _state_body(store.create())

    @app.get("/api/v1/sessions/{session_id}")
    def get_state(session_id: str):
        session = store.get(session_id)
        if session is None:
            return not_found()
        with session.lock:
            return _state_body(session)

    @app.post("/api/v1/sessions/{session_id}/click")
    async def click(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return not_found()
        body = await request.json()
        if not isinstance(body, dict):
            return JSONResponse({"detail": "body must be an object"}, status_code=400)
        x, y = body.get("x"), body.get("y")
        if not isinstance(x, int) or not isinstance(y, int) or not (
            0 <= x < PLAYGROUND_SIZE and 0 <= y < PLAYGROUND_SIZE
        ):
            return JSONResponse({"detail": "x and y must be integers in 0..9"}, status_code=400)
        with session.lock:
            result = execute_click(session.board, session.mechanic, (x, y), session.mode)
            session.board = result.board
            session.revision += 1
            return {
                "revision": session.revision,
                "board": encode_board(result.board),
                "trace": [e.to_dict() for e in result.trace],
                "error": result.error.value if result.error else None,
            }

    @app.put("/api/v1/sessions/{session_id}/mechanic", status_code=204)
    async def put_mechanic(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return not_found()
        body = await request.json()
        try:
            mechanic = decode_mechanic(json.dumps(body))
        except DocumentError as err:
            return JSONResponse(_document_error_body(err), status_code=422)
        with session.lock:
            session.mechanic = mechanic
            session.revision += 1
        return Response(status_code=204)

    @app.put("/api/v1/sessions/{session_id}/board", status_code=204)
    async def put_board(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return not_found()
        body = await request.json()
        if not isinstance(body, dict) or not isinstance(body.get("board"), str):
            return JSONResponse({"detail": "body must be {board: text}"}, status_code=400)
        try:
            board = decode_board(body["board"])
        except DocumentError as err:
            return JSONResponse(_document_error_body(err), status_code=422)
        with session.lock:
            session.board = board
            session.revision += 1
        return Response(status_code=204)

    @app.post("/api/v1/sessions/{session_id}/mode", status_code=204)
    async def set_mode(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return not_found()
        body = await request.json()
        mode_name = body.get("mode") if isinstance(body, dict) else None
        if mode_name not in (Mode.NORMAL.value, Mode.BRUSH.value):
            return JSONResponse({"detail": "mode must be NORMAL or BRUSH"}, status_code=400)
        with session.lock:
            session.mode = Mode(mode_name)
            session.revision += 1
        return Response(status_code=204)

    @app.get("/api/v1/corpus")
    def corpus_index() -> dict:
        return {"names": list(REFERENCE_NAMES)}

    @app.get("/api/v1/corpus/{name}")
    def corpus_entry(name: str):
        if name not in REFERENCE_NAMES:
            return JSONResponse({"detail": "unknown reference mechanic"}, status_code=404)
        ref = load_reference(name)
        return {
            "name": ref.name,
            "rule_count": ref.rule_count,
            "command_count": ref.command_count,
            "mechanic": json.loads(encode_mechanic(ref.mechanic)),
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
