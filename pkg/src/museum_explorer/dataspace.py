"""Domain types and distance metrics of the exploration data space.

Objects are described along three dimensions (Chronos = time, Topos =
place, Thema = concepts).  Each dimension carries its own notion of
distance between dimensional entities: century gap for Chronos, shortest
hop count over the territory adjacency graph for Topos, shortest hop
count over the concept graph for Thema.  Catalogs are immutable after
load; all-pairs hop distances are precomputed so distance queries are
pure lookups.
"""

from __future__ import annotations

import json
import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class CatalogError(ValueError):
    """A catalog file or in-memory catalog violates an invariant."""


class Dimension(str, Enum):
    CHRONOS = "chronos"
    TOPOS = "topos"
    THEMA = "thema"


DIMENSIONS = (Dimension.CHRONOS, Dimension.TOPOS, Dimension.THEMA)


@dataclass(frozen=True)
class DimensionalEntity:
    """A typed descriptor tag: one century, territory, or concept.

    ``payload`` is the signed century index for Chronos entities (19 for
    the XIXth century, negative for BC) and an opaque domain key for
    Topos/Thema.  ``r_min``/``r_max`` optionally override the engine's
    global relevance bounds for this entity.
    """

    id: str
    dimension: Dimension
    label: str
    payload: int | str
    r_min: float | None = None
    r_max: float | None = None


@dataclass(frozen=True)
class HeritageObject:
    """An explorable item carrying at least one entity per dimension."""

    id: str
    name: str
    description: str
    entities: frozenset[str]
    image_ref: str | None = None


@dataclass
class Catalog:
    """Validated, immutable-by-convention object/entity catalog.

    ``hop_distances`` maps each graph dimension to a dict of
    ``(entity_id, entity_id) -> hops`` for reachable pairs; unreachable
    pairs are absent and read as infinity.  ``ceilings`` holds, per graph
    dimension, the longest finite shortest path plus one, used to stand
    in for infinite components when distances are aggregated.
    """

    entities: dict[str, DimensionalEntity]
    objects: dict[str, HeritageObject]
    topos_edges: list[tuple[str, str]]
    thema_edges: list[tuple[str, str]]
    source: str | None = None
    hop_distances: dict[Dimension, dict[tuple[str, str], int]] = field(repr=False, default_factory=dict)
    ceilings: dict[Dimension, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._validate()
        self._precompute()

    # -- validation ---------------------------------------------------

    def _validate(self) -> None:
        for ob in self.objects.values():
            dims_seen = set()
            for eid in ob.entities:
                entity = self.entities.get(eid)
                if entity is None:
                    raise CatalogError(f"object {ob.id!r} references unknown entity {eid!r}")
                dims_seen.add(entity.dimension)
            missing = [d.value for d in DIMENSIONS if d not in dims_seen]
            if missing:
                raise CatalogError(f"object {ob.id!r} has no entity in dimension(s): {', '.join(missing)}")
        for dim, edges in ((Dimension.TOPOS, self.topos_edges), (Dimension.THEMA, self.thema_edges)):
            for a, b in edges:
                for eid in (a, b):
                    entity = self.entities.get(eid)
                    if entity is None:
                        raise CatalogError(f"{dim.value} edge [{a!r}, {b!r}] references unknown entity {eid!r}")
                    if entity.dimension is not dim:
                        raise CatalogError(
                            f"{dim.value} edge [{a!r}, {b!r}]: entity {eid!r} is in "
                            f"dimension {entity.dimension.value!r}"
                        )
                if a == b:
                    raise CatalogError(f"{dim.value} edge [{a!r}, {b!r}] is a self-loop")
        for entity in self.entities.values():
            if entity.dimension is Dimension.CHRONOS:
                if not isinstance(entity.payload, int) or isinstance(entity.payload, bool):
                    raise CatalogError(f"chronos entity {entity.id!r} payload must be a century index (int)")
            elif not isinstance(entity.payload, str):
                raise CatalogError(f"{entity.dimension.value} entity {entity.id!r} payload must be a string key")

    # -- precomputation -----------------------------------------------

    def _precompute(self) -> None:
        for dim, edges in ((Dimension.TOPOS, self.topos_edges), (Dimension.THEMA, self.thema_edges)):
            nodes = [e.id for e in self.entities.values() if e.dimension is dim]
            adjacency: dict[str, list[str]] = {n: [] for n in nodes}
            for a, b in edges:
                adjacency[a].append(b)
                adjacency[b].append(a)
            dists: dict[tuple[str, str], int] = {}
            longest = 0
            for start in nodes:
                seen = {start: 0}
                queue = deque([start])
                while queue:
                    cur = queue.popleft()
                    for nxt in adjacency[cur]:
                        if nxt not in seen:
                            seen[nxt] = seen[cur] + 1
                            queue.append(nxt)
                for end, d in seen.items():
                    dists[(start, end)] = d
                    longest = max(longest, d)
            self.hop_distances[dim] = dists
            self.ceilings[dim] = float(longest + 1)

    # -- queries ------------------------------------------------------

    def entities_in(self, dim: Dimension) -> list[DimensionalEntity]:
        return [e for e in self.entities.values() if e.dimension is dim]

    def distance(self, a: str, b: str) -> float:
        """Distance between two entities of the same dimension.

        Centuries apart for Chronos, shortest-path hops for Topos/Thema;
        ``inf`` for unreachable graph pairs.
        """
        ea, eb = self.entities[a], self.entities[b]
        if ea.dimension is not eb.dimension:
            raise CatalogError(
                f"distance undefined across dimensions: {a!r} is {ea.dimension.value}, {b!r} is {eb.dimension.value}"
            )
        if ea.dimension is Dimension.CHRONOS:
            return float(abs(ea.payload - eb.payload))
        hops = self.hop_distances[ea.dimension].get((a, b))
        return float(hops) if hops is not None else math.inf

    def neighbors(self, de: str, thresholds: dict[Dimension, int]) -> set[str]:
        """Entities of de's dimension within the threshold distance, excluding de."""
        dim = self.entities[de].dimension
        limit = thresholds[dim]
        return {
            e.id
            for e in self.entities_in(dim)
            if e.id != de and self.distance(de, e.id) <= limit
        }

    def object_distance(self, a: str, b: str) -> float:
        """Sum over dimensions of the closest entity pairing between two objects.

        Unreachable graph components contribute the dimension's ceiling
        instead of infinity, keeping the value finite for the layout solver.
        """
        oa, ob = self.objects[a], self.objects[b]
        total = 0.0
        for dim in DIMENSIONS:
            ents_a = [e for e in oa.entities if self.entities[e].dimension is dim]
            ents_b = [e for e in ob.entities if self.entities[e].dimension is dim]
            best = min(self.distance(x, y) for x in ents_a for y in ents_b)
            if math.isinf(best):
                best = self.ceilings[dim]
            total += best
        return total


# -- file loading -----------------------------------------------------

_TOP_KEYS = {"entities", "objects", "topos_edges", "thema_edges"}
_ENTITY_KEYS = {"id", "dimension", "label", "payload", "r_min", "r_max"}
_OBJECT_KEYS = {"id", "name", "description", "image_ref", "entities"}


def _check_keys(mapping: dict, allowed: set[str], where: str, strict: bool) -> None:
    unknown = set(mapping) - allowed
    if not unknown:
        return
    message = f"unknown key(s) {sorted(unknown)} in {where}"
    if strict:
        raise CatalogError(message)
    warnings.warn(message, stacklevel=3)


def load_catalog(source: str | Path, strict: bool = False) -> Catalog:
    """Load and validate a catalog JSON document.

    Unknown keys are rejected when ``strict`` is true and warned about
    otherwise.  Every structural invariant violation is reported with the
    offending id.
    """
    path = Path(source)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot parse catalog {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise CatalogError("catalog document must be a JSON object")
    _check_keys(raw, _TOP_KEYS, "catalog document", strict)

    entities: dict[str, DimensionalEntity] = {}
    for item in raw.get("entities", []):
        _check_keys(item, _ENTITY_KEYS, f"entity {item.get('id')!r}", strict)
        try:
            dim = Dimension(item["dimension"])
        except (KeyError, ValueError):
            raise CatalogError(f"entity {item.get('id')!r} has invalid dimension {item.get('dimension')!r}") from None
        eid = item.get("id")
        if not isinstance(eid, str) or not eid:
            raise CatalogError(f"entity id must be a non-empty string, got {eid!r}")
        if eid in entities:
            raise CatalogError(f"duplicate entity id {eid!r}")
        entities[eid] = DimensionalEntity(
            id=eid,
            dimension=dim,
            label=item.get("label", eid),
            payload=item.get("payload"),
            r_min=item.get("r_min"),
            r_max=item.get("r_max"),
        )

    objects: dict[str, HeritageObject] = {}
    for item in raw.get("objects", []):
        _check_keys(item, _OBJECT_KEYS, f"object {item.get('id')!r}", strict)
        oid = item.get("id")
        if not isinstance(oid, str) or not oid:
            raise CatalogError(f"object id must be a non-empty string, got {oid!r}")
        if oid in objects:
            raise CatalogError(f"duplicate object id {oid!r}")
        refs = item.get("entities", [])
        if not isinstance(refs, list):
            raise CatalogError(f"object {oid!r} entities must be a list of entity ids")
        objects[oid] = HeritageObject(
            id=oid,
            name=item.get("name", oid),
            description=item.get("description", ""),
            entities=frozenset(refs),
            image_ref=item.get("image_ref"),
        )

    def edge_list(key: str) -> list[tuple[str, str]]:
        out = []
        for pair in raw.get(key, []):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise CatalogError(f"{key} entries must be [id, id] pairs, got {pair!r}")
            out.append((pair[0], pair[1]))
        return out

    return Catalog(
        entities=entities,
        objects=objects,
        topos_edges=edge_list("topos_edges"),
        thema_edges=edge_list("thema_edges"),
        source=str(path),
    )


def sample_catalog_path() -> Path:
    """Path of the Breton-heritage sample catalog shipped with the package."""
    return Path(__file__).parent / "data" / "sample_catalog.json"
