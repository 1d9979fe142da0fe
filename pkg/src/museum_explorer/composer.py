"""Room composition: candidate grouping, quota selection, spring layout.

Candidates for a room are grouped by how far they sit from the room's
topic: G1 matches every topic entity exactly, G2 is one step off in its
worst dimension, G3 two steps.  Twelve objects are drawn as 5/5/2 from
the three groups (backfilling G1 first when a group runs short), then
arranged by a mass-spring relaxation whose rest lengths are proportional
to pairwise object distances, and finally normalized into the unit square
with a uniform scale so relative distances are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .dataspace import Catalog

if TYPE_CHECKING:
    from .params import Params

ROOM_CAPACITY = 12
QUOTAS = (5, 5, 2)


@dataclass(frozen=True)
class PartitionedCandidates:
    """Disjoint candidate sets at topic distance 0, 1, and 2."""

    g1: frozenset[str]
    g2: frozenset[str]
    g3: frozenset[str]

    def group_of(self, object_id: str) -> int:
        if object_id in self.g1:
            return 1
        if object_id in self.g2:
            return 2
        if object_id in self.g3:
            return 3
        raise KeyError(object_id)


@dataclass(frozen=True)
class PlacedObject:
    """An object placed at normalized room coordinates."""

    object_id: str
    x: float
    y: float
    source_group: int


@dataclass
class RoomContents:
    """Selection + layout result; flags survive into the snapshot."""

    placed: list[PlacedObject]
    empty_pool: bool = False
    layout_converged: bool = True

    def to_jsonable(self) -> dict:
        return {
            "placed": [
                {"object_id": p.object_id, "x": p.x, "y": p.y, "source_group": p.source_group}
                for p in self.placed
            ],
            "empty_pool": self.empty_pool,
            "layout_converged": self.layout_converged,
        }


def topic_distance(object_id: str, topic: Sequence[str], catalog: Catalog) -> float:
    """Worst-dimension gap between an object and a room topic.

    For each topic entity, take the object's closest own entity in that
    dimension; the topic distance is the maximum of those minima, so 0
    means the object matches every topic entity.
    """
    ob = catalog.objects[object_id]
    worst = 0.0
    for te in topic:
        dim = catalog.entities[te].dimension
        own = [e for e in ob.entities if catalog.entities[e].dimension is dim]
        best = min(catalog.distance(o, te) for o in own)
        worst = max(worst, best)
    return worst


def partition_objects(topic: Sequence[str], catalog: Catalog) -> PartitionedCandidates:
    """Group every catalog object by topic distance; beyond 2 is excluded."""
    if not topic:
        raise ValueError("topic must contain at least one entity")
    buckets: dict[float, set[str]] = {0.0: set(), 1.0: set(), 2.0: set()}
    for oid in catalog.objects:
        d = topic_distance(oid, topic, catalog)
        if d in buckets:
            buckets[d].add(oid)
    return PartitionedCandidates(
        g1=frozenset(buckets[0.0]), g2=frozenset(buckets[1.0]), g3=frozenset(buckets[2.0])
    )


def select_objects(
    parts: PartitionedCandidates,
    rng: np.random.Generator,
    exclusions: set[str] | None = None,
) -> list[tuple[str, int]]:
    """Draw up to 12 objects as 5/5/2 from G1/G2/G3.

    Within a group the draw is uniform via ``rng``; a short group's slack
    is backfilled from G1, then G2, then G3.  Exclusions (objects already
    shown in adjoining rooms) are soft: they are ignored entirely if
    honoring them would leave nothing to show.
    """
    raw = [parts.g1, parts.g2, parts.g3]
    skip = exclusions or set()
    pools = [sorted(g - skip) for g in raw]
    if not any(pools) and any(raw):
        pools = [sorted(g) for g in raw]

    take = [min(q, len(p)) for q, p in zip(QUOTAS, pools)]
    shortfall = ROOM_CAPACITY - sum(take)
    for i in range(3):
        if shortfall <= 0:
            break
        extra = min(shortfall, len(pools[i]) - take[i])
        take[i] += extra
        shortfall -= extra

    chosen: list[tuple[str, int]] = []
    for group_no, (pool, n) in enumerate(zip(pools, take), start=1):
        if n == 0:
            continue
        picks = rng.choice(len(pool), size=n, replace=False)
        chosen.extend((pool[int(i)], group_no) for i in picks)
    return chosen


@dataclass
class LayoutResult:
    positions: np.ndarray
    converged: bool
    energy_history: list[float]


def spring_energy(positions: np.ndarray, rest: np.ndarray, k: float) -> float:
    """Total potential energy of the fully connected spring system."""
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    stretch = dist - rest
    iu = np.triu_indices(len(positions), k=1)
    return float(0.5 * k * (stretch[iu] ** 2).sum())


def _spring_gradient(positions: np.ndarray, rest: np.ndarray, k: float) -> np.ndarray:
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    np.fill_diagonal(dist, 1.0)
    # coincident pairs (zero-rest springs fully contracted) exert no force;
    # the floor keeps the division finite without changing that limit
    dist = np.maximum(dist, 1e-12)
    coeff = k * (dist - rest) / dist
    np.fill_diagonal(coeff, 0.0)
    return (coeff[:, :, None] * diff).sum(axis=1)


def relax_springs(
    initial: np.ndarray,
    rest: np.ndarray,
    k: float,
    step: float,
    damping: float,
    tol: float,
    max_iters: int,
) -> LayoutResult:
    """Damped relaxation of the spring system by gradient descent.

    Each iteration proposes a step along the negative energy gradient; a
    step that would raise the energy is retried with the step size scaled
    by ``damping``, and an accepted step lets the size grow back, so the
    effective step adapts to the local curvature.  Accepted steps never
    increase the energy.  Converged when the largest per-node displacement
    of an accepted step falls below ``tol``.
    """
    pos = initial.astype(float).copy()
    energy = spring_energy(pos, rest, k)
    history = [energy]
    converged = False
    s = step
    ceiling = step * 1e3
    for _ in range(max_iters):
        grad = _spring_gradient(pos, rest, k)
        accepted = False
        for _ in range(60):
            candidate = pos - s * grad
            cand_energy = spring_energy(candidate, rest, k)
            if cand_energy <= energy:
                accepted = True
                break
            s *= damping
        if not accepted:
            converged = True
            break
        move = float(np.sqrt(((candidate - pos) ** 2).sum(axis=1)).max())
        pos = candidate
        energy = cand_energy
        history.append(energy)
        s = min(s / damping, ceiling)
        if move < tol:
            converged = True
            break
    return LayoutResult(positions=pos, converged=converged, energy_history=history)


def normalize_positions(positions: np.ndarray) -> np.ndarray:
    """Fit positions into the unit square with one uniform scale.

    The longer bounding-box side is mapped to span [0, 1] and the cloud
    is centered, so ratios of pairwise distances are untouched.
    """
    lo = positions.min(axis=0)
    hi = positions.max(axis=0)
    span = float((hi - lo).max())
    if span <= 0.0:
        return np.full_like(positions, 0.5)
    center = (lo + hi) / 2.0
    # clip float spill of order 1e-16 so the inclusive-bounds invariant holds
    return np.clip((positions - center) / span + 0.5, 0.0, 1.0)


def layout_objects(
    objects: Sequence[tuple[str, int]],
    catalog: Catalog,
    rng: np.random.Generator,
    params: "Params",
) -> tuple[list[PlacedObject], bool]:
    """Position the selected objects inside the unit square.

    Starts from seeded uniform-random positions, relaxes springs whose
    rest lengths are ``rest_scale * object_distance``, then normalizes.
    Returns the placements and whether the solver converged.
    """
    ids = [oid for oid, _ in objects]
    groups = {oid: g for oid, g in objects}
    n = len(ids)
    if n == 0:
        return [], True
    if n == 1:
        return [PlacedObject(ids[0], 0.5, 0.5, groups[ids[0]])], True
    if n == 2:
        rest = params.rest_scale * catalog.object_distance(ids[0], ids[1])
        half = min(rest / 2.0, 0.5)
        return [
            PlacedObject(ids[0], 0.5 - half, 0.5, groups[ids[0]]),
            PlacedObject(ids[1], 0.5 + half, 0.5, groups[ids[1]]),
        ], True

    rest = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            rest[i, j] = rest[j, i] = params.rest_scale * catalog.object_distance(ids[i], ids[j])
    initial = rng.random((n, 2))
    result = relax_springs(
        initial, rest, params.spring_k, params.step, params.damping, params.tol, params.max_iters
    )
    final = normalize_positions(result.positions)
    placed = [
        PlacedObject(oid, float(final[i, 0]), float(final[i, 1]), groups[oid]) for i, oid in enumerate(ids)
    ]
    return placed, result.converged


def compose_room(
    topic: Sequence[str],
    catalog: Catalog,
    seed: int | Sequence[int],
    exclusions: set[str] | None = None,
    params: "Params | None" = None,
) -> RoomContents:
    """Partition, select, and lay out a room's contents; deterministic per seed."""
    from .params import Params as _Params

    p = params if params is not None else _Params()
    rng = np.random.default_rng(seed)
    parts = partition_objects(topic, catalog)
    chosen = select_objects(parts, rng, exclusions)
    if not chosen:
        return RoomContents(placed=[], empty_pool=True, layout_converged=True)
    placed, converged = layout_objects(chosen, catalog, rng, p)
    return RoomContents(placed=placed, empty_pool=False, layout_converged=converged)


def required_quotas_met(parts: PartitionedCandidates) -> bool:
    """True when every group can fill its own quota without backfill."""
    return len(parts.g1) >= QUOTAS[0] and len(parts.g2) >= QUOTAS[1] and len(parts.g3) >= QUOTAS[2]
