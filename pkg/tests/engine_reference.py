"""Straight-line reference for the relevance update, used as a test oracle.

Re-evaluates every formula from scratch each tick: the full trace is
replayed without pruning, and neighbor sets are rebuilt with a fresh BFS
per tick instead of precomputed tables.  Deliberately shares no code with
the engine under test.
"""

from __future__ import annotations

import math
from collections import deque


def _bfs(edges: list[tuple[str, str]], nodes: list[str], start: str) -> dict[str, int]:
    adj: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    hops = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in adj[cur]:
            if nxt not in hops:
                hops[nxt] = hops[cur] + 1
                queue.append(nxt)
    return hops


def reference_relevance(
    entities: dict[str, tuple[str, int | None]],
    topos_edges: list[tuple[str, str]],
    thema_edges: list[tuple[str, str]],
    trace: list[tuple[tuple[str, ...], float, float]],
    ticks: int,
    lam: float,
    tau: float,
    s_d: float,
    gamma: float,
    cooldown: float,
    thresholds: dict[str, int],
    r_min: float = 0.0,
    r_max: float = 1.0,
) -> dict[str, float]:
    """Run ``ticks`` seconds over a trace of (entity_ids, weight, timestamp)."""
    R = {de: r_min for de in entities}
    last_diffusion = {de: -math.inf for de in entities}

    def neighbors(de: str) -> list[str]:
        dim = entities[de][0]
        same_dim = [e for e, (d, _) in entities.items() if d == dim]
        if dim == "chronos":
            century = entities[de][1]
            return [e for e in same_dim if e != de and abs(entities[e][1] - century) <= thresholds[dim]]
        edges = topos_edges if dim == "topos" else thema_edges
        hops = _bfs(edges, same_dim, de)
        return [e for e in same_dim if e != de and hops.get(e, math.inf) <= thresholds[dim]]

    for now in range(ticks):
        touched = set()
        for ents, weight, t_i in trace:
            if t_i > now:
                continue
            w = weight * math.exp(-lam * (now - t_i))
            for de in sorted(set(ents)):
                R[de] = R[de] + w * (r_max - R[de])
                touched.add(de)
        for de in touched:
            R[de] = tau * r_min + (1.0 - tau) * R[de]
        donors = [de for de in sorted(R) if R[de] > s_d and now - last_diffusion[de] >= cooldown]
        deltas: dict[str, float] = {}
        for de in donors:
            ng = neighbors(de)
            if not ng:
                continue
            share = gamma * R[de] / len(ng)
            for n in ng:
                deltas[n] = deltas.get(n, 0.0) + share
            deltas[de] = deltas.get(de, 0.0) - gamma * R[de]
            last_diffusion[de] = now
        for de, dv in deltas.items():
            R[de] += dv
        for de in R:
            R[de] = min(r_max, max(r_min, R[de]))
    return R
