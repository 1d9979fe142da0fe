"""Real-time estimation of the user's centers of interest.

Every dimensional entity carries a relevance value R bounded by per-entity
min/max.  Once per simulated second the engine replays the live part of
the interaction trace: each entry reinforces the entities it touched with
an exponentially decayed weight, touched entities are then reduced toward
their minimum, and entities whose relevance exceeds a threshold diffuse a
fraction of it to their graph neighbors (conserving the total), gated by
a per-entity cooldown.  Trace entries whose weight has decayed below a
small epsilon are marked dead and skipped from then on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterator

from .dataspace import Catalog

if TYPE_CHECKING:
    from .params import Params


class InteractionType(str, Enum):
    STAND_BEFORE = "stand_before"
    CONSULT_DESCRIPTION = "consult_description"
    BASKET_ADD = "basket_add"
    BASKET_REMOVE = "basket_remove"
    ENTER_ROOM = "enter_room"
    TOOL_USE = "tool_use"


class TraceError(ValueError):
    """An interaction cannot be appended to the trace."""


@dataclass(frozen=True)
class Interaction:
    """One timestamped user action over a set of dimensional entities.

    ``entities`` is kept as a sorted tuple so iteration order (and hence
    floating-point evaluation order) is reproducible.
    """

    type: InteractionType
    entities: tuple[str, ...]
    weight: float
    timestamp: float

    @classmethod
    def make(cls, type: InteractionType, entities, weight: float, timestamp: float) -> "Interaction":
        return cls(type=type, entities=tuple(sorted(set(entities))), weight=weight, timestamp=timestamp)


class Trace:
    """Append-only interaction log with per-entry liveness flags."""

    def __init__(self) -> None:
        self.entries: list[Interaction] = []
        self.dead: list[bool] = []

    def __len__(self) -> int:
        return len(self.entries)

    def append(self, interaction: Interaction) -> None:
        self.entries.append(interaction)
        self.dead.append(False)

    def live(self) -> Iterator[tuple[int, Interaction]]:
        for idx, entry in enumerate(self.entries):
            if not self.dead[idx]:
                yield idx, entry

    def mark_dead(self, idx: int) -> None:
        self.dead[idx] = True


@dataclass
class RelevanceState:
    """R values, diffusion bookkeeping, and the simulation clock."""

    R: dict[str, float]
    last_diffusion: dict[str, float] = field(default_factory=dict)
    clock: float = 0.0

    @classmethod
    def initial(cls, catalog: Catalog, params: "Params") -> "RelevanceState":
        return cls(R={eid: r_min(eid, catalog, params) for eid in catalog.entities})


def r_min(de: str, catalog: Catalog, params: "Params") -> float:
    override = catalog.entities[de].r_min
    return params.r_min if override is None else override


def r_max(de: str, catalog: Catalog, params: "Params") -> float:
    override = catalog.entities[de].r_max
    return params.r_max if override is None else override


def record_interaction(trace: Trace, interaction: Interaction, state: RelevanceState, catalog: Catalog) -> Trace:
    """Validate and append an interaction; relevance changes only at the next tick."""
    if not interaction.entities:
        raise TraceError("interaction has an empty entity set")
    for eid in interaction.entities:
        if eid not in catalog.entities:
            raise TraceError(f"interaction references unknown entity {eid!r}")
    if interaction.timestamp < state.clock - 1.0:
        raise TraceError(
            f"interaction timestamp {interaction.timestamp} regresses beyond tolerance (clock {state.clock})"
        )
    if trace.entries and interaction.timestamp < trace.entries[-1].timestamp:
        raise TraceError(
            f"interaction timestamp {interaction.timestamp} precedes last trace entry "
            f"{trace.entries[-1].timestamp}"
        )
    trace.append(interaction)
    return trace


def interaction_weight(interaction: Interaction, t: float, lam: float) -> float:
    """Decayed weight of an interaction at time t (half-life ln(2)/lam)."""
    return interaction.weight * math.exp(-lam * (t - interaction.timestamp))


def tick(state: RelevanceState, trace: Trace, params: "Params", catalog: Catalog) -> RelevanceState:
    """Advance the estimation by one second.

    Order within the tick: reinforcement from live trace entries, decrease
    of touched entities, threshold-gated diffusion, clamping, pruning of
    entries whose weight fell below epsilon.  The clock advances last.
    """
    now = state.clock
    R = state.R

    # reinforcement: each live entry pulls its entities toward their maximum
    touched: set[str] = set()
    live_weights: list[tuple[int, float]] = []
    for idx, entry in trace.live():
        if entry.timestamp > now:
            continue
        w = interaction_weight(entry, now, params.lam)
        live_weights.append((idx, w))
        for de in entry.entities:
            R[de] = R[de] + w * (r_max(de, catalog, params) - R[de])
            touched.add(de)

    # decrease: once per entity, regardless of how many entries touched it
    reduced = R.keys() if params.global_decrease else touched
    for de in reduced:
        R[de] = params.tau * r_min(de, catalog, params) + (1.0 - params.tau) * R[de]

    propagate(state, params, catalog)

    for de in R:
        lo, hi = r_min(de, catalog, params), r_max(de, catalog, params)
        if R[de] < lo:
            R[de] = lo
        elif R[de] > hi:
            R[de] = hi

    for idx, w in live_weights:
        if abs(w) < params.epsilon_prune:
            trace.mark_dead(idx)

    state.clock = now + 1.0
    return state


def propagate(state: RelevanceState, params: "Params", catalog: Catalog) -> list[str]:
    """Diffuse relevance from every entity above the threshold to its neighbors.

    Donations are computed from a snapshot of the pre-diffusion values, so
    the outcome does not depend on donor order within a tick.  The total
    relevance is conserved: each donor loses exactly what its neighbors
    receive.  Returns the donor ids (for bookkeeping and tests).
    """
    now = state.clock
    R = state.R
    donors = [
        de
        for de in sorted(R)
        if R[de] > params.s_d and now - state.last_diffusion.get(de, -math.inf) >= params.cooldown
    ]
    deltas: dict[str, float] = {}
    diffused: list[str] = []
    for de in donors:
        ng = sorted(catalog.neighbors(de, params.neighbor_thresholds))
        if not ng:
            continue
        share = params.gamma * R[de] / len(ng)
        for n in ng:
            deltas[n] = deltas.get(n, 0.0) + share
        deltas[de] = deltas.get(de, 0.0) - params.gamma * R[de]
        state.last_diffusion[de] = now
        diffused.append(de)
    for de, dv in deltas.items():
        R[de] += dv
    return diffused


def relevance_to_color(R: float, lo: float, hi: float) -> float:
    """Map relevance linearly to a hue fraction: 0 = red, 1 = green."""
    if hi <= lo:
        return 0.0
    frac = (R - lo) / (hi - lo)
    return min(1.0, max(0.0, frac))


def top_relevant(state: RelevanceState, k: int, exclude: set[str] | None = None) -> list[tuple[str, float]]:
    """The k most relevant entities outside ``exclude``; ties break by id."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    skip = exclude or set()
    ranked = sorted(((de, r) for de, r in state.R.items() if de not in skip), key=lambda it: (-it[1], it[0]))
    return ranked[:k]
