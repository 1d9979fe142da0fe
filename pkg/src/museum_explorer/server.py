"""HTTP surface of the exploration service.

Endpoint paths are the contract consumed by the browser client:

    POST /sessions
    POST /sessions/{id}/interactions
    POST /sessions/{id}/ticks?n=        (logical clock only)
    GET  /sessions/{id}/museum
    GET  /sessions/{id}/rooms/{rid}
    GET  /sessions/{id}/relevance?dimension=
    GET  /sessions/{id}/basket
    GET  /sessions/{id}/events          (server-sent event stream)

Each session has a single writer: every mutating call takes the session
lock, and real-time sessions are ticked by a background thread at 1 Hz.
"""

from __future__ import annotations

import asyncio
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from fastapi.staticfiles import StaticFiles

from .dataspace import Catalog, Dimension
from .museum import MuseumError
from .params import Params, ParamsError
from .relevance import TraceError
from .session import (
    ClockMode,
    ClockModeError,
    EventError,
    Session,
    advance_clock,
    create_session,
    events_since,
    get_basket,
    get_museum,
    get_relevance_overlay,
    get_room,
    post_interaction,
)

SSE_POLL_SECONDS = 0.2
TICK_SECONDS = 1.0


@dataclass
class SessionHandle:
    session: Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    stop: threading.Event = field(default_factory=threading.Event)
    ticker: threading.Thread | None = None


def _start_ticker(handle: SessionHandle) -> None:
    def loop() -> None:
        from .session import tick_session

        while not handle.stop.wait(TICK_SECONDS):
            with handle.lock:
                tick_session(handle.session)

    handle.ticker = threading.Thread(target=loop, daemon=True, name=f"ticker-{handle.session.id}")
    handle.ticker.start()


def create_app(
    catalog: Catalog,
    params: Params | None = None,
    default_logical: bool = False,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service app around one shared catalog."""
    base_params = params if params is not None else Params()
    app = FastAPI(title="museum-explorer", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    handles: dict[str, SessionHandle] = {}
    app.state.handles = handles

    def handle_of(session_id: str) -> SessionHandle:
        handle = handles.get(session_id)
        if handle is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return handle

    @app.post("/sessions")
    def create(body: dict = Body(default_factory=dict)):
        mode_name = body.get("clock_mode", "logical" if default_logical else "realtime")
        try:
            mode = ClockMode(mode_name)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown clock mode {mode_name!r}") from None
        seed = body.get("seed", 0)
        try:
            session_params = (
                Params.from_dict({**base_params.to_dict(), **body["params"]})
                if "params" in body
                else base_params
            )
            session = create_session(catalog, session_params, mode, seed=seed)
        except ParamsError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        handle = SessionHandle(session=session)
        handles[session.id] = handle
        if mode is ClockMode.REALTIME:
            _start_ticker(handle)
        return {
            "session_id": session.id,
            "clock_mode": mode.value,
            "root": session.museum.root,
            "clock": session.clock,
        }

    @app.get("/sessions/{session_id}")
    def info(session_id: str):
        handle = handle_of(session_id)
        with handle.lock:
            s = handle.session
            return {
                "session_id": s.id,
                "clock": s.clock,
                "clock_mode": s.clock_mode.value,
                "user_room": s.user_room,
                "room_count": len(s.museum.rooms),
                "basket_size": len(s.basket),
            }

    @app.post("/sessions/{session_id}/interactions")
    def interact(session_id: str, event: dict = Body(...)):
        handle = handle_of(session_id)
        with handle.lock:
            try:
                return post_interaction(handle.session, event)
            except (EventError, TraceError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            except MuseumError as exc:
                raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.post("/sessions/{session_id}/ticks")
    def ticks(session_id: str, n: int = Query(default=1, ge=0)):
        handle = handle_of(session_id)
        with handle.lock:
            try:
                emitted = advance_clock(handle.session, n)
            except ClockModeError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            return {"clock": handle.session.clock, "events": emitted}

    @app.get("/sessions/{session_id}/museum")
    def museum(session_id: str):
        handle = handle_of(session_id)
        with handle.lock:
            return get_museum(handle.session)

    @app.get("/sessions/{session_id}/rooms/{room_id}")
    def room(session_id: str, room_id: str):
        handle = handle_of(session_id)
        with handle.lock:
            try:
                snapshot = get_room(handle.session, room_id)
            except MuseumError as exc:
                raise HTTPException(status_code=404, detail=str(exc)) from exc
            objects = {
                p["object_id"]: _object_card(handle.session, p["object_id"])
                for p in snapshot["contents"]["placed"]
            }
            return {"room_id": room_id, "room": snapshot, "objects": objects}

    @app.get("/sessions/{session_id}/relevance")
    def relevance(session_id: str, dimension: str = Query(...), limit: int | None = Query(default=None, ge=1)):
        handle = handle_of(session_id)
        try:
            dim = Dimension(dimension)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown dimension {dimension!r}") from None
        with handle.lock:
            return {"dimension": dim.value, "entities": get_relevance_overlay(handle.session, dim, limit)}

    @app.get("/sessions/{session_id}/basket")
    def basket(session_id: str):
        handle = handle_of(session_id)
        with handle.lock:
            ids = get_basket(handle.session)
            return {"basket": ids, "objects": {oid: _object_card(handle.session, oid) for oid in ids}}

    @app.get("/sessions/{session_id}/events")
    async def events(
        session_id: str,
        since: int = Query(default=0, ge=0),
        max_events: int | None = Query(default=None, ge=1),
    ):
        """Server-sent event stream; ``max_events`` closes it after N events.

        Delivery is at-least-once: a client that reconnects with an older
        ``since`` may see events again and reconciles via snapshots.
        """
        handle = handle_of(session_id)

        async def stream():
            cursor = since
            sent = 0
            while True:
                with handle.lock:
                    fresh = events_since(handle.session, cursor)
                for event in fresh:
                    cursor = event["seq"]
                    yield f"id: {event['seq']}\ndata: {json.dumps(event, sort_keys=True)}\n\n"
                    sent += 1
                    if max_events is not None and sent >= max_events:
                        return
                await asyncio.sleep(SSE_POLL_SECONDS)

        return StreamingResponse(stream(), media_type="text/event-stream")

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _object_card(session: Session, object_id: str) -> dict:
    ob = session.catalog.objects[object_id]
    return {
        "name": ob.name,
        "description": ob.description,
        "image_ref": ob.image_ref,
        "entities": sorted(ob.entities),
    }
