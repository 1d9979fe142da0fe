"""Session loop tying catalog, relevance, museum, and basket together.

A session owns one museum and one relevance state and advances them at
1 Hz: queued user events are translated into weighted interactions, the
relevance tick runs, spawn triggers are evaluated, and at most one room
is created per tick.  Sessions are single-writer; in real-time mode a
driver calls ``tick_session`` every second, in logical mode the clock is
advanced explicitly, which is what makes runs reproducible.
"""

from __future__ import annotations

import hashlib
import json
import uuid
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import museum as museum_mod
from .composer import PlacedObject, RoomContents
from .dataspace import Catalog, Dimension, DimensionalEntity, HeritageObject
from .museum import Museum, Room, init_museum, spawn_room
from .params import Params
from .relevance import (
    Interaction,
    InteractionType,
    RelevanceState,
    Trace,
    record_interaction,
    relevance_to_color,
    r_max,
    r_min,
    tick,
    top_relevant,
)

SCHEMA_VERSION = 1
EVENT_BUFFER = 4096
OVERLAY_TOP = 10


class EventError(ValueError):
    """A posted user event is malformed or targets something unknown."""


class ClockModeError(RuntimeError):
    """A clock operation was used in the wrong mode."""


class PersistenceError(ValueError):
    """A persisted session payload cannot be restored."""


class ClockMode(str, Enum):
    REALTIME = "realtime"
    LOGICAL = "logical"


@dataclass
class Session:
    id: str
    catalog: Catalog
    params: Params
    seed: int
    clock_mode: ClockMode
    trace: Trace
    state: RelevanceState
    museum: Museum
    basket: list[str] = field(default_factory=list)
    user_room: str = "0"
    pending_approaches: set[tuple[str, int]] = field(default_factory=set)
    events: deque = field(default_factory=lambda: deque(maxlen=EVENT_BUFFER))
    event_seq: int = 0

    @property
    def clock(self) -> float:
        return self.state.clock


def create_session(
    catalog: Catalog,
    params: Params | None = None,
    clock_mode: ClockMode = ClockMode.LOGICAL,
    seed: int = 0,
    session_id: str | None = None,
) -> Session:
    p = params if params is not None else Params()
    m = init_museum(catalog, p, seed=seed)
    return Session(
        id=session_id or f"s-{uuid.uuid4().hex[:12]}",
        catalog=catalog,
        params=p,
        seed=seed,
        clock_mode=clock_mode,
        trace=Trace(),
        state=RelevanceState.initial(catalog, p),
        museum=m,
        user_room=m.root,
    )


# -- event translation ------------------------------------------------

_OBJECT_EVENTS = {
    "stand_before": InteractionType.STAND_BEFORE,
    "consult_description": InteractionType.CONSULT_DESCRIPTION,
    "basket_add": InteractionType.BASKET_ADD,
    "basket_remove": InteractionType.BASKET_REMOVE,
}

_TOOL_DIMENSIONS = {"topos": Dimension.TOPOS, "chronos": Dimension.CHRONOS, "thema": Dimension.THEMA}


def _expand_chronos_interval(session: Session, target) -> list[str]:
    if isinstance(target, int) and not isinstance(target, bool):
        lo = hi = target
    elif isinstance(target, (list, tuple)) and len(target) == 2:
        lo, hi = sorted(int(v) for v in target)
    else:
        raise EventError(f"chronos tool target must be a century or [start, end] interval, got {target!r}")
    covered = [
        e.id for e in session.catalog.entities_in(Dimension.CHRONOS) if lo <= e.payload <= hi
    ]
    if not covered:
        raise EventError(f"chronos interval [{lo}, {hi}] covers no century in the catalog")
    return covered


def post_interaction(session: Session, event: dict) -> dict:
    """Translate a wire event, validate it, and apply it to the session.

    Object events carry the object's full entity set; entering a room
    carries the room topic and moves the user; tool use carries the
    selected entities (a Chronos interval expands to every century it
    covers); door approaches are queued for the next tick instead of
    entering the trace.
    """
    if not isinstance(event, dict) or "type" not in event:
        raise EventError("event must be an object with a 'type' key")
    etype = event["type"]

    if etype == "door_approach":
        room = session.museum.room(event.get("room_id", ""))
        door = event.get("door_index")
        if not isinstance(door, int) or not 0 <= door < museum_mod.DOOR_COUNT:
            raise EventError(f"door_index must be 0..{museum_mod.DOOR_COUNT - 1}, got {door!r}")
        session.pending_approaches.add((room.id, door))
        return {"ok": True, "queued": "door_approach"}

    if etype in _OBJECT_EVENTS:
        oid = event.get("object_id")
        ob = session.catalog.objects.get(oid)
        if ob is None:
            raise EventError(f"unknown object {oid!r}")
        itype = _OBJECT_EVENTS[etype]
        if itype is InteractionType.BASKET_REMOVE and oid not in session.basket:
            raise EventError(f"object {oid!r} is not in the basket")
        entities = sorted(ob.entities)
        if itype is InteractionType.BASKET_ADD and oid not in session.basket:
            session.basket.append(oid)
        elif itype is InteractionType.BASKET_REMOVE:
            session.basket.remove(oid)
    elif etype == "enter_room":
        room = session.museum.room(event.get("room_id", ""))
        itype = InteractionType.ENTER_ROOM
        entities = sorted(room.topic)
        session.user_room = room.id
    elif etype == "tool_use":
        tool = event.get("tool")
        if tool not in _TOOL_DIMENSIONS:
            raise EventError(f"unknown tool {tool!r}")
        target = event.get("target")
        if tool == "chronos":
            entities = _expand_chronos_interval(session, target)
        else:
            entity = session.catalog.entities.get(target)
            if entity is None or entity.dimension is not _TOOL_DIMENSIONS[tool]:
                raise EventError(f"tool target {target!r} is not a {tool} entity")
            entities = [target]
        itype = InteractionType.TOOL_USE
    else:
        raise EventError(f"unknown event type {etype!r}")

    interaction = Interaction.make(
        type=itype,
        entities=entities,
        weight=session.params.weight_table[itype],
        timestamp=session.state.clock,
    )
    record_interaction(session.trace, interaction, session.state, session.catalog)
    return {"ok": True, "interaction": itype.value, "entities": list(interaction.entities)}


# -- ticking ----------------------------------------------------------

def _emit(session: Session, tick_no: float, etype: str, payload: dict) -> dict:
    session.event_seq += 1
    event = {"seq": session.event_seq, "tick": tick_no, "type": etype, **payload}
    session.events.append(event)
    return event


def tick_session(session: Session) -> list[dict]:
    """Run one simulated second; returns the events it emitted."""
    t = session.state.clock
    before = dict(session.state.R)
    tick(session.state, session.trace, session.params, session.catalog)

    approaches = set(session.pending_approaches)
    session.pending_approaches.clear()
    triggers = museum_mod.detect_triggers(session.museum, session.state, session.user_room, approaches, session.params)

    emitted: list[dict] = []
    for trigger in triggers:
        _, new_id = spawn_room(
            session.museum, session.user_room, trigger, session.state, session.catalog, session.params, now=t
        )
        if new_id is None:
            continue
        new_room = session.museum.rooms[new_id]
        door_index = session.museum.rooms[session.user_room].doors.index(new_id)
        emitted.append(
            _emit(session, t, "room_spawned", {
                "room_id": new_id,
                "parent_id": session.user_room,
                "door_index": door_index,
                "topic": list(new_room.topic),
            })
        )
        emitted.append(
            _emit(session, t, "door_opened", {
                "room_id": session.user_room,
                "door_index": door_index,
                "child_id": new_id,
            })
        )
        break

    if any(before[de] != r for de, r in session.state.R.items()):
        top = top_relevant(session.state, OVERLAY_TOP)
        emitted.append(
            _emit(session, t, "relevance_updated", {
                "top": [
                    {
                        "entity": de,
                        "relevance": r,
                        "hue": relevance_to_color(
                            r,
                            r_min(de, session.catalog, session.params),
                            r_max(de, session.catalog, session.params),
                        ),
                    }
                    for de, r in top
                ],
            })
        )
    return emitted


def advance_clock(session: Session, n: int) -> list[dict]:
    """Run n synchronous ticks (logical mode only); returns all emitted events."""
    if session.clock_mode is not ClockMode.LOGICAL:
        raise ClockModeError("advance_clock requires a logical-clock session")
    if n < 0:
        raise ValueError(f"cannot advance by a negative tick count: {n}")
    out: list[dict] = []
    for _ in range(n):
        out.extend(tick_session(session))
    return out


# -- snapshots --------------------------------------------------------

def get_museum(session: Session) -> dict:
    return session.museum.to_jsonable()


def get_room(session: Session, room_id: str) -> dict:
    return session.museum.room(room_id).to_jsonable()


def get_relevance_overlay(session: Session, dimension: Dimension, limit: int | None = None) -> list[dict]:
    """Entities of one dimension ranked by relevance, with feedback hues."""
    ranked = sorted(
        session.catalog.entities_in(dimension),
        key=lambda e: (-session.state.R[e.id], e.id),
    )
    if limit is not None:
        ranked = ranked[:limit]
    return [
        {
            "entity": e.id,
            "label": e.label,
            "payload": e.payload,
            "relevance": session.state.R[e.id],
            "hue": relevance_to_color(
                session.state.R[e.id],
                r_min(e.id, session.catalog, session.params),
                r_max(e.id, session.catalog, session.params),
            ),
        }
        for e in ranked
    ]


def get_basket(session: Session) -> list[str]:
    return list(session.basket)


def events_since(session: Session, seq: int) -> list[dict]:
    return [e for e in session.events if e["seq"] > seq]


# -- persistence ------------------------------------------------------

def _catalog_document(catalog: Catalog) -> dict:
    entities = []
    for e in sorted(catalog.entities.values(), key=lambda e: e.id):
        item: dict = {"id": e.id, "dimension": e.dimension.value, "label": e.label, "payload": e.payload}
        if e.r_min is not None:
            item["r_min"] = e.r_min
        if e.r_max is not None:
            item["r_max"] = e.r_max
        entities.append(item)
    objects = []
    for ob in sorted(catalog.objects.values(), key=lambda o: o.id):
        item = {
            "id": ob.id,
            "name": ob.name,
            "description": ob.description,
            "entities": sorted(ob.entities),
        }
        if ob.image_ref is not None:
            item["image_ref"] = ob.image_ref
        objects.append(item)
    return {
        "entities": entities,
        "objects": objects,
        "topos_edges": [list(e) for e in catalog.topos_edges],
        "thema_edges": [list(e) for e in catalog.thema_edges],
    }


def _catalog_from_document(doc: dict, source: str | None) -> Catalog:
    entities = {
        item["id"]: DimensionalEntity(
            id=item["id"],
            dimension=Dimension(item["dimension"]),
            label=item["label"],
            payload=item["payload"],
            r_min=item.get("r_min"),
            r_max=item.get("r_max"),
        )
        for item in doc["entities"]
    }
    objects = {
        item["id"]: HeritageObject(
            id=item["id"],
            name=item["name"],
            description=item["description"],
            entities=frozenset(item["entities"]),
            image_ref=item.get("image_ref"),
        )
        for item in doc["objects"]
    }
    return Catalog(
        entities=entities,
        objects=objects,
        topos_edges=[tuple(e) for e in doc["topos_edges"]],
        thema_edges=[tuple(e) for e in doc["thema_edges"]],
        source=source,
    )


def _session_state_document(session: Session) -> dict:
    return {
        "session_id": session.id,
        "seed": session.seed,
        "clock_mode": session.clock_mode.value,
        "params": session.params.to_dict(),
        "catalog": _catalog_document(session.catalog),
        "catalog_source": session.catalog.source,
        "clock": session.state.clock,
        "relevance": {de: session.state.R[de] for de in sorted(session.state.R)},
        "last_diffusion": {de: t for de, t in sorted(session.state.last_diffusion.items())},
        "trace": [
            {
                "type": entry.type.value,
                "entities": list(entry.entities),
                "weight": entry.weight,
                "timestamp": entry.timestamp,
                "dead": session.trace.dead[idx],
            }
            for idx, entry in enumerate(session.trace.entries)
        ],
        "museum": {
            "root": session.museum.root,
            "next_index": session.museum.next_index,
            "seed": session.museum.seed,
            "rooms": session.museum.to_jsonable()["rooms"],
        },
        "basket": list(session.basket),
        "user_room": session.user_room,
        "pending_approaches": sorted(list(p) for p in session.pending_approaches),
        "event_seq": session.event_seq,
        "events": list(session.events),
    }


def _checksum(state_doc: dict) -> str:
    canonical = json.dumps(state_doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_session(session: Session, sink: str | Path) -> Path:
    """Write the full session state to a JSON file; round-trip is lossless."""
    state_doc = _session_state_document(session)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "checksum": _checksum(state_doc),
        "state": state_doc,
    }
    path = Path(sink)
    path.write_text(json.dumps(payload, sort_keys=True, indent=1), encoding="utf-8")
    return path


def load_session(source: str | Path) -> Session:
    path = Path(source)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PersistenceError(f"cannot read session payload {path}: {exc}") from exc
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise PersistenceError(f"unsupported session schema version {version!r} (expected {SCHEMA_VERSION})")
    state_doc = payload.get("state")
    if not isinstance(state_doc, dict):
        raise PersistenceError("session payload has no state document")
    if _checksum(state_doc) != payload.get("checksum"):
        raise PersistenceError("session payload is corrupt (checksum mismatch)")

    catalog = _catalog_from_document(state_doc["catalog"], state_doc.get("catalog_source"))
    params = Params.from_dict(state_doc["params"])
    trace = Trace()
    for item in state_doc["trace"]:
        trace.append(
            Interaction(
                type=InteractionType(item["type"]),
                entities=tuple(item["entities"]),
                weight=item["weight"],
                timestamp=item["timestamp"],
            )
        )
        if item["dead"]:
            trace.mark_dead(len(trace.entries) - 1)
    state = RelevanceState(
        R=dict(state_doc["relevance"]),
        last_diffusion=dict(state_doc["last_diffusion"]),
        clock=state_doc["clock"],
    )
    rooms: dict[str, Room] = {}
    for rid, doc in state_doc["museum"]["rooms"].items():
        contents = RoomContents(
            placed=[
                PlacedObject(p["object_id"], p["x"], p["y"], p["source_group"])
                for p in doc["contents"]["placed"]
            ],
            empty_pool=doc["contents"]["empty_pool"],
            layout_converged=doc["contents"]["layout_converged"],
        )
        rooms[rid] = Room(
            id=rid,
            parent=doc["parent"],
            topic=tuple(doc["topic"]),
            created_at=doc["created_at"],
            doors=list(doc["doors"]),
            contents=contents,
        )
    m = Museum(
        rooms=rooms,
        root=state_doc["museum"]["root"],
        next_index=state_doc["museum"]["next_index"],
        seed=state_doc["museum"]["seed"],
    )
    session = Session(
        id=state_doc["session_id"],
        catalog=catalog,
        params=params,
        seed=state_doc["seed"],
        clock_mode=ClockMode(state_doc["clock_mode"]),
        trace=trace,
        state=state,
        museum=m,
        basket=list(state_doc["basket"]),
        user_room=state_doc["user_room"],
        pending_approaches={tuple(p) for p in state_doc["pending_approaches"]},
        event_seq=state_doc["event_seq"],
    )
    session.events.extend(state_doc["events"])
    return session
