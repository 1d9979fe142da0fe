"""Grow a museum by exploring: rooms appear where the interest goes.

The stroller consults fishing-related objects, so a fishing room opens;
approaching a closed door opens another room regardless of relevance.
Rooms are never destroyed, so the path back always exists.

Run: python demos/03_growing_museum.py
"""

from museum_explorer import (
    ClockMode,
    advance_clock,
    create_session,
    get_museum,
    load_catalog,
    post_interaction,
    sample_catalog_path,
    tick_session,
)

catalog = load_catalog(sample_catalog_path())
session = create_session(catalog, clock_mode=ClockMode.LOGICAL, seed=8, session_id="demo")

root = session.museum.root
print(f"root room topic: {session.museum.rooms[root].topic}")

print("\n-- minute one: the stroller keeps using the Thema tool on 'fishing'")
for _ in range(12):
    post_interaction(session, {"type": "tool_use", "tool": "thema", "target": "fishing"})
    for event in tick_session(session):
        if event["type"] == "room_spawned":
            print(f"  tick {event['tick']:4.0f}: room {event['room_id']} spawned, topic {event['topic']}")

print("\n-- then walks up to a closed door of the root room")
post_interaction(session, {"type": "door_approach", "room_id": root, "door_index": 2})
for event in tick_session(session):
    if event["type"] == "room_spawned":
        print(f"  tick {event['tick']:4.0f}: room {event['room_id']} spawned at door 2, topic {event['topic']}")

print("\n-- idle minute: relevance decays, nothing else appears")
events = advance_clock(session, 60)
print(f"  {sum(1 for e in events if e['type'] == 'room_spawned')} rooms spawned while idle")

snapshot = get_museum(session)
print(f"\nmuseum after {session.clock:.0f} s: {len(snapshot['rooms'])} rooms")
for rid, room in sorted(snapshot["rooms"].items()):
    doors = ", ".join(c if c else "closed" for c in room["doors"])
    print(f"  room {rid}: topic={room['topic']}, parent={room['parent']}, doors=[{doors}]")
