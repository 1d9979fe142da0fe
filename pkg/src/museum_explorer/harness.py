"""Headless drivers: scripted runs, synthetic agents, and run metrics.

Runs execute in logical time and are fully determined by (catalog,
params, script-or-policy, seed), which is what the golden-trace
regression tests rely on.  The agent policies are synthetic stand-ins
for a human stroller: Focused hammers whatever lies closest to a target
entity, Wanderer keeps approaching closed doors, Random samples
uniformly from every action currently available.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dataspace import Catalog
from .museum import validate_museum
from .params import Params
from .session import (
    ClockMode,
    EventError,
    Session,
    create_session,
    post_interaction,
    tick_session,
)

POLICIES = ("focused", "wanderer", "random")


class ScriptError(ValueError):
    """A script file is malformed or inconsistent with the run."""


@dataclass
class Script:
    """Ordered (tick, event) pairs; offsets must be non-decreasing."""

    steps: list[tuple[int, dict]]

    def __post_init__(self) -> None:
        last = -1
        for tick_no, event in self.steps:
            if not isinstance(tick_no, int) or tick_no < 0:
                raise ScriptError(f"script tick offsets must be non-negative integers, got {tick_no!r}")
            if tick_no < last:
                raise ScriptError(f"script tick offsets must be non-decreasing (saw {tick_no} after {last})")
            if not isinstance(event, dict) or "type" not in event:
                raise ScriptError(f"script events must be objects with a 'type' key, got {event!r}")
            last = tick_no

    @property
    def last_tick(self) -> int:
        return self.steps[-1][0] if self.steps else -1


def load_script(source: str | Path) -> Script:
    path = Path(source)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScriptError(f"cannot parse script {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ScriptError("script document must be a JSON array of {tick, event} items")
    steps = []
    for item in raw:
        if not isinstance(item, dict) or "tick" not in item or "event" not in item:
            raise ScriptError(f"script items must have 'tick' and 'event' keys, got {item!r}")
        steps.append((item["tick"], item["event"]))
    return Script(steps)


@dataclass
class RunMetrics:
    """Aggregates of one run plus per-entity relevance trajectories."""

    rooms_created: int
    unique_objects_exposed: int
    serendipity_ratio: float
    trajectories: dict[str, list[float]] = field(default_factory=dict)


def _collect_metrics(session: Session, trajectories: dict[str, list[float]]) -> RunMetrics:
    placements = [p for room in session.museum.rooms.values() for p in room.contents.placed]
    exposed = {p.object_id for p in placements}
    offbeat = sum(1 for p in placements if p.source_group in (2, 3))
    return RunMetrics(
        rooms_created=len(session.museum.rooms) - 1,
        unique_objects_exposed=len(exposed),
        serendipity_ratio=(offbeat / len(placements)) if placements else 0.0,
        trajectories=trajectories,
    )


def _record_point(session: Session, trajectories: dict[str, list[float]]) -> None:
    for de, r in session.state.R.items():
        trajectories[de].append(r)


def run_script(
    catalog: Catalog,
    params: Params | None,
    script: Script,
    seed: int = 0,
    ticks: int | None = None,
) -> tuple[RunMetrics, Session]:
    """Play a script in logical time; deterministic for fixed inputs."""
    total = ticks if ticks is not None else script.last_tick + 1
    if total < script.last_tick + 1:
        raise ScriptError(f"run of {total} ticks cannot play a script reaching tick {script.last_tick}")
    session = create_session(catalog, params, ClockMode.LOGICAL, seed=seed, session_id="run")
    trajectories: dict[str, list[float]] = {de: [] for de in catalog.entities}
    cursor = 0
    for tick_no in range(total):
        while cursor < len(script.steps) and script.steps[cursor][0] == tick_no:
            event = script.steps[cursor][1]
            try:
                post_interaction(session, event)
            except EventError as exc:
                raise ScriptError(f"script event at tick {tick_no} rejected: {exc}") from exc
            cursor += 1
        tick_session(session)
        _record_point(session, trajectories)
    return _collect_metrics(session, trajectories), session


# -- agents -----------------------------------------------------------

def _adjacent_rooms(session: Session) -> list[str]:
    room = session.museum.rooms[session.user_room]
    out = list(room.children)
    if room.parent is not None:
        out.append(room.parent)
    return sorted(out)


def _pick(rng: np.random.Generator, items: list):
    return items[int(rng.integers(len(items)))]


def _focused_event(session: Session, rng: np.random.Generator, target: str) -> dict:
    catalog = session.catalog
    dim = catalog.entities[target].dimension
    room = session.museum.rooms[session.user_room]
    contents = room.contents.placed
    if contents:
        def gap(oid: str) -> float:
            own = [e for e in catalog.objects[oid].entities if catalog.entities[e].dimension is dim]
            return min(catalog.distance(o, target) for o in own)

        best = min(contents, key=lambda p: (gap(p.object_id), p.object_id))
        return {"type": "consult_description", "object_id": best.object_id}
    if dim.value == "chronos":
        century = catalog.entities[target].payload
        return {"type": "tool_use", "tool": "chronos", "target": [century, century]}
    return {"type": "tool_use", "tool": dim.value, "target": target}


def _wanderer_event(session: Session, rng: np.random.Generator) -> dict:
    room = session.museum.rooms[session.user_room]
    closed = room.closed_doors()
    if closed:
        return {"type": "door_approach", "room_id": room.id, "door_index": int(_pick(rng, closed))}
    return {"type": "enter_room", "room_id": _pick(rng, _adjacent_rooms(session))}


def _random_event(session: Session, rng: np.random.Generator) -> dict | None:
    room = session.museum.rooms[session.user_room]
    contents = [p.object_id for p in room.contents.placed]
    candidates: list[dict] = []
    if contents:
        candidates.append({"type": "stand_before", "object_id": _pick(rng, sorted(contents))})
        candidates.append({"type": "consult_description", "object_id": _pick(rng, sorted(contents))})
    candidates.append({"type": "basket_add", "object_id": _pick(rng, sorted(session.catalog.objects))})
    if session.basket:
        candidates.append({"type": "basket_remove", "object_id": _pick(rng, sorted(session.basket))})
    adjacent = _adjacent_rooms(session)
    if adjacent:
        candidates.append({"type": "enter_room", "room_id": _pick(rng, adjacent)})
    entity = session.catalog.entities[_pick(rng, sorted(session.catalog.entities))]
    if entity.dimension.value == "chronos":
        candidates.append({"type": "tool_use", "tool": "chronos", "target": [entity.payload, entity.payload]})
    else:
        candidates.append({"type": "tool_use", "tool": entity.dimension.value, "target": entity.id})
    closed = room.closed_doors()
    if closed:
        candidates.append({"type": "door_approach", "room_id": room.id, "door_index": int(_pick(rng, closed))})
    return _pick(rng, candidates)


def run_agent(
    catalog: Catalog,
    params: Params | None,
    policy: str,
    steps: int,
    seed: int = 0,
    target: str | None = None,
    validate_every: int | None = None,
) -> tuple[RunMetrics, Session]:
    """Drive a session with a synthetic policy for ``steps`` ticks.

    ``validate_every`` optionally re-checks the museum tree invariants
    during the run (used by the fuzz tests).
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if policy == "focused":
        if target is None:
            target = min(catalog.entities)
        elif target not in catalog.entities:
            raise ValueError(f"focused target {target!r} is not a catalog entity")
    session = create_session(catalog, params, ClockMode.LOGICAL, seed=seed, session_id="agent")
    rng = np.random.default_rng([seed, 1])
    trajectories: dict[str, list[float]] = {de: [] for de in catalog.entities}
    for step in range(steps):
        if policy == "focused":
            event = _focused_event(session, rng, target)
        elif policy == "wanderer":
            event = _wanderer_event(session, rng)
        else:
            event = _random_event(session, rng)
        if event is not None:
            post_interaction(session, event)
        tick_session(session)
        _record_point(session, trajectories)
        if validate_every and (step + 1) % validate_every == 0:
            validate_museum(session.museum)
    return _collect_metrics(session, trajectories), session


# -- reporting --------------------------------------------------------

METRIC_COLUMNS = ("rooms_created", "unique_objects_exposed", "serendipity_ratio")


def emit_metrics(metrics: RunMetrics, format: str = "table") -> str:
    """Render the run summary as an aligned table or a one-row CSV."""
    values = {
        "rooms_created": metrics.rooms_created,
        "unique_objects_exposed": metrics.unique_objects_exposed,
        "serendipity_ratio": metrics.serendipity_ratio,
    }
    if format == "csv":
        out = io.StringIO()
        out.write(",".join(METRIC_COLUMNS) + "\n")
        out.write(",".join(repr(values[c]) if isinstance(values[c], float) else str(values[c]) for c in METRIC_COLUMNS) + "\n")
        return out.getvalue()
    if format == "table":
        width = max(len(c) for c in METRIC_COLUMNS)
        lines = [f"{'metric'.ljust(width)}  value", f"{'-' * width}  -----"]
        for c in METRIC_COLUMNS:
            lines.append(f"{c.ljust(width)}  {values[c]}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown metrics format {format!r}")


def parse_metrics_csv(text: str) -> RunMetrics:
    """Read back a summary CSV produced by emit_metrics."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if len(lines) != 2 or tuple(lines[0].split(",")) != METRIC_COLUMNS:
        raise ValueError("not a metrics CSV")
    raw = lines[1].split(",")
    return RunMetrics(
        rooms_created=int(raw[0]),
        unique_objects_exposed=int(raw[1]),
        serendipity_ratio=float(raw[2]),
    )


def trajectories_csv(metrics: RunMetrics) -> str:
    """Per-tick relevance series, one column per entity (sorted ids)."""
    entities = sorted(metrics.trajectories)
    out = io.StringIO()
    out.write(",".join(["tick"] + entities) + "\n")
    length = max((len(metrics.trajectories[e]) for e in entities), default=0)
    for t in range(length):
        row = [str(t)] + [repr(metrics.trajectories[e][t]) for e in entities]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def write_run_outputs(metrics: RunMetrics, session: Session, out_dir: str | Path) -> dict[str, Path]:
    """Write metrics.csv, trajectories.csv, and museum.json under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "metrics": out / "metrics.csv",
        "trajectories": out / "trajectories.csv",
        "museum": out / "museum.json",
    }
    paths["metrics"].write_text(emit_metrics(metrics, "csv"), encoding="utf-8")
    paths["trajectories"].write_text(trajectories_csv(metrics), encoding="utf-8")
    paths["museum"].write_text(
        json.dumps(session.museum.to_jsonable(), sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    return paths
