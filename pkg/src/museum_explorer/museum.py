"""The growing room tree: doors, spawn triggers, and topic selection.

Rooms form a rooted tree.  Each room has three child-door slots that open
one by one as child rooms are spawned, a topic of one or two dimensional
entities, and contents composed once at creation.  Rooms are never
destroyed and never mutated after creation (besides doors opening), so
the user's spatial references stay valid for the whole session.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .composer import RoomContents, compose_room
from .dataspace import Catalog
from .relevance import RelevanceState

if TYPE_CHECKING:
    from .params import Params

DOOR_COUNT = 3


class MuseumError(ValueError):
    """A museum operation referenced a missing room or violated structure."""


@dataclass
class Room:
    id: str
    parent: str | None
    topic: tuple[str, ...]
    created_at: float
    doors: list[str | None] = field(default_factory=lambda: [None] * DOOR_COUNT)
    contents: RoomContents = field(default_factory=lambda: RoomContents(placed=[]))

    @property
    def children(self) -> list[str]:
        return [c for c in self.doors if c is not None]

    def closed_doors(self) -> list[int]:
        return [i for i, c in enumerate(self.doors) if c is None]

    def to_jsonable(self) -> dict:
        return {
            "parent": self.parent,
            "children": self.children,
            "topic": list(self.topic),
            "doors": list(self.doors),
            "created_at": self.created_at,
            "contents": self.contents.to_jsonable(),
        }


@dataclass(frozen=True)
class RelevancePeak:
    entity_id: str
    relevance: float


@dataclass(frozen=True)
class DoorApproach:
    room_id: str
    door_index: int


SpawnTrigger = RelevancePeak | DoorApproach


class TopicExhausted(MuseumError):
    """No entity is left outside the adjoining topics."""


@dataclass
class Museum:
    rooms: dict[str, Room]
    root: str
    next_index: int
    seed: int = 0

    def room(self, room_id: str) -> Room:
        try:
            return self.rooms[room_id]
        except KeyError:
            raise MuseumError(f"unknown room {room_id!r}") from None

    def to_jsonable(self) -> dict:
        return {
            "root": self.root,
            "rooms": {rid: room.to_jsonable() for rid, room in sorted(self.rooms.items())},
        }


def init_museum(catalog: Catalog, params: "Params", seed: int = 0) -> Museum:
    """Start a museum with a single root room.

    The root topic is the entity associated with the most objects (ties
    break by ascending id); its contents are composed immediately.
    """
    if not catalog.objects:
        raise MuseumError("cannot initialize a museum from an empty catalog")
    counts: dict[str, int] = {eid: 0 for eid in catalog.entities}
    for ob in catalog.objects.values():
        for eid in ob.entities:
            counts[eid] += 1
    topic_entity = min(counts, key=lambda eid: (-counts[eid], eid))
    room = Room(
        id="0",
        parent=None,
        topic=(topic_entity,),
        created_at=0.0,
        contents=compose_room((topic_entity,), catalog, seed=[seed, 0], params=params),
    )
    return Museum(rooms={room.id: room}, root=room.id, next_index=1, seed=seed)


def adjoining_rooms(museum: Museum, room_id: str) -> set[str]:
    """The room itself, its parent if any, and its children."""
    room = museum.room(room_id)
    out = {room_id} | set(room.children)
    if room.parent is not None:
        out.add(room.parent)
    return out


def adjoining_topics(museum: Museum, room_id: str) -> set[str]:
    out: set[str] = set()
    for rid in adjoining_rooms(museum, room_id):
        out.update(museum.rooms[rid].topic)
    return out


def detect_triggers(
    museum: Museum,
    state: RelevanceState,
    user_room: str,
    approach_events: set[tuple[str, int]],
    params: "Params",
) -> list[SpawnTrigger]:
    """Spawn triggers for this tick, ordered by execution priority.

    Door approaches (to still-closed doors of the user's room, by door
    index) come first, then relevance peaks: entities at or above s_room
    whose id is not already a topic of an adjoining room, strongest first.
    """
    room = museum.room(user_room)
    triggers: list[SpawnTrigger] = []
    closed = set(room.closed_doors())
    seen_doors: set[int] = set()
    for rid, door in sorted(approach_events, key=lambda it: it[1]):
        if rid == user_room and door in closed and door not in seen_doors:
            triggers.append(DoorApproach(room_id=rid, door_index=door))
            seen_doors.add(door)
    nearby = adjoining_topics(museum, user_room)
    peaks = [
        (de, r)
        for de, r in state.R.items()
        if r >= params.s_room and de not in nearby
    ]
    peaks.sort(key=lambda it: (-it[1], it[0]))
    triggers.extend(RelevancePeak(entity_id=de, relevance=r) for de, r in peaks)
    return triggers


def select_topic(
    state: RelevanceState,
    adjoining: set[str],
    catalog: Catalog,
    params: "Params",
    forced_first: str | None = None,
) -> tuple[str, ...]:
    """Pick one or two entities for a new room's topic.

    The first member is the highest-relevance entity outside the
    adjoining topics (or the forced peak entity).  A second member joins
    only if the next-highest eligible entity lies in a *different*
    dimension and clears s_room.  Raises TopicExhausted when nothing is
    eligible.
    """
    eligible = sorted(
        ((de, r) for de, r in state.R.items() if de not in adjoining),
        key=lambda it: (-it[1], it[0]),
    )
    if forced_first is not None:
        eligible = [(de, r) for de, r in eligible if de != forced_first]
        first = forced_first
    else:
        if not eligible:
            raise TopicExhausted("every entity already appears in an adjoining topic")
        first, _ = eligible.pop(0)
    if eligible:
        nxt, r = eligible[0]
        same_dim = catalog.entities[nxt].dimension is catalog.entities[first].dimension
        if r >= params.s_room and not same_dim:
            return (first, nxt)
    return (first,)


def spawn_room(
    museum: Museum,
    parent_id: str,
    trigger: SpawnTrigger,
    state: RelevanceState,
    catalog: Catalog,
    params: "Params",
    now: float | None = None,
) -> tuple[Museum, str | None]:
    """Create a child room through a closed door of ``parent_id``.

    Returns the museum and the new room id, or ``None`` when the spawn is
    refused (parent full, approached door already open, or no eligible
    topic left).  ``now`` stamps the new room; it defaults to the state
    clock.
    """
    parent = museum.room(parent_id)
    closed = parent.closed_doors()
    if isinstance(trigger, DoorApproach):
        if trigger.door_index not in closed:
            return museum, None
        door = trigger.door_index
        forced = None
    else:
        if not closed:
            return museum, None
        door = closed[0]
        forced = trigger.entity_id
    try:
        topic = select_topic(state, adjoining_topics(museum, parent_id), catalog, params, forced_first=forced)
    except TopicExhausted:
        return museum, None

    exclusions: set[str] = set()
    for rid in adjoining_rooms(museum, parent_id):
        exclusions.update(p.object_id for p in museum.rooms[rid].contents.placed)

    room_index = museum.next_index
    room = Room(
        id=str(room_index),
        parent=parent_id,
        topic=topic,
        created_at=state.clock if now is None else now,
        contents=compose_room(topic, catalog, seed=[museum.seed, room_index], exclusions=exclusions, params=params),
    )
    museum.next_index += 1
    museum.rooms[room.id] = room
    parent.doors[door] = room.id
    return museum, room.id


def validate_museum(museum: Museum) -> None:
    """Structural check: one root, consistent links, acyclic, door capacity."""
    root = museum.rooms.get(museum.root)
    if root is None or root.parent is not None:
        raise MuseumError("root room missing or has a parent")
    seen: set[str] = set()
    stack = [museum.root]
    while stack:
        rid = stack.pop()
        if rid in seen:
            raise MuseumError(f"cycle through room {rid!r}")
        seen.add(rid)
        room = museum.rooms.get(rid)
        if room is None:
            raise MuseumError(f"dangling child link to {rid!r}")
        if len(room.doors) != DOOR_COUNT:
            raise MuseumError(f"room {rid!r} has {len(room.doors)} door slots")
        if len(room.children) > DOOR_COUNT:
            raise MuseumError(f"room {rid!r} has more than {DOOR_COUNT} children")
        if not 1 <= len(room.topic) <= 2:
            raise MuseumError(f"room {rid!r} topic size {len(room.topic)} out of range")
        for child_id in room.children:
            child = museum.rooms.get(child_id)
            if child is None:
                raise MuseumError(f"room {rid!r} lists missing child {child_id!r}")
            if child.parent != rid:
                raise MuseumError(f"room {child_id!r} parent link is inconsistent")
            stack.append(child_id)
    if seen != set(museum.rooms):
        orphans = set(museum.rooms) - seen
        raise MuseumError(f"rooms unreachable from the root: {sorted(orphans)}")
