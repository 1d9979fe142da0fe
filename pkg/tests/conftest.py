"""Shared fixtures: the shipped sample catalog plus programmatic builders."""

from __future__ import annotations

import numpy as np
import pytest

from museum_explorer.dataspace import (
    Catalog,
    Dimension,
    DimensionalEntity,
    HeritageObject,
    load_catalog,
    sample_catalog_path,
)


def build_catalog(entities, objects, topos_edges=(), thema_edges=(), source=None) -> Catalog:
    """Construct a catalog from terse tuples.

    entities: iterable of (id, dimension, payload) or (id, dimension, payload, r_min, r_max)
    objects: iterable of (id, [entity ids])
    """
    ents = {}
    for row in entities:
        eid, dim, payload = row[:3]
        r_min = row[3] if len(row) > 3 else None
        r_max = row[4] if len(row) > 4 else None
        ents[eid] = DimensionalEntity(
            id=eid, dimension=Dimension(dim), label=eid, payload=payload, r_min=r_min, r_max=r_max
        )
    obs = {
        oid: HeritageObject(id=oid, name=oid, description="", entities=frozenset(refs))
        for oid, refs in objects
    }
    return Catalog(
        entities=ents,
        objects=obs,
        topos_edges=[tuple(e) for e in topos_edges],
        thema_edges=[tuple(e) for e in thema_edges],
        source=source,
    )


@pytest.fixture(scope="session")
def sample_catalog() -> Catalog:
    return load_catalog(sample_catalog_path())


@pytest.fixture
def tiny_catalog() -> Catalog:
    """One object, one entity per dimension, no edges."""
    return build_catalog(
        entities=[("c20", "chronos", 20), ("town", "topos", "t-town"), ("idea", "thema", "k-idea")],
        objects=[("ob1", ["c20", "town", "idea"])],
    )


def quota_catalog() -> Catalog:
    """Catalog where topic ('k0',) yields |G1|=6, |G2|=6, |G3|=3.

    Thema chain k0 - k1 - k2; six objects carry k0, six k1, three k2.
    """
    entities = [("c20", "chronos", 20), ("town", "topos", "t")]
    entities += [(f"k{i}", "thema", f"concept-{i}") for i in range(3)]
    objects = []
    for i in range(6):
        objects.append((f"g1-{i}", ["c20", "town", "k0"]))
    for i in range(6):
        objects.append((f"g2-{i}", ["c20", "town", "k1"]))
    for i in range(3):
        objects.append((f"g3-{i}", ["c20", "town", "k2"]))
    return build_catalog(
        entities=entities,
        objects=objects,
        thema_edges=[("k0", "k1"), ("k1", "k2")],
    )


def random_tree_edges(ids: list[str], rng: np.random.Generator, chord_p: float = 0.15) -> list[tuple[str, str]]:
    """Random spanning tree plus occasional chords (connected by construction)."""
    edges = []
    for i in range(1, len(ids)):
        j = int(rng.integers(i))
        edges.append((ids[j], ids[i]))
    for i in range(len(ids)):
        for j in range(i + 2, len(ids)):
            if rng.random() < chord_p and (ids[i], ids[j]) not in edges:
                edges.append((ids[i], ids[j]))
    return edges


def random_catalog(
    rng: np.random.Generator,
    n_topos: int = 8,
    n_thema: int = 10,
    centuries: range = range(15, 22),
    n_objects: int = 16,
) -> Catalog:
    """A plausible random catalog: tree-like graphs, 1-2 entities per dimension."""
    chronos = [(f"c{c}", "chronos", c) for c in centuries]
    topos = [(f"t{i}", "topos", f"terr-{i}") for i in range(n_topos)]
    thema = [(f"k{i}", "thema", f"concept-{i}") for i in range(n_thema)]
    topos_ids = [t[0] for t in topos]
    thema_ids = [k[0] for k in thema]
    objects = []
    for i in range(n_objects):
        refs = set()
        for pool in ([c[0] for c in chronos], topos_ids, thema_ids):
            count = 1 + int(rng.random() < 0.35)
            picks = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
            refs.update(pool[int(p)] for p in picks)
        objects.append((f"ob{i}", sorted(refs)))
    return build_catalog(
        entities=chronos + topos + thema,
        objects=objects,
        topos_edges=random_tree_edges(topos_ids, rng),
        thema_edges=random_tree_edges(thema_ids, rng),
    )


def clustered_catalog(
    rng: np.random.Generator,
    n_topos: int = 10,
    n_thema: int = 12,
    centuries: range = range(15, 22),
    n_clusters: int = 4,
    n_objects: int = 40,
) -> Catalog:
    """Catalog whose objects form cross-dimension collections.

    Each object samples its territory, concept, and century near one of a
    few cluster centers, the way real heritage collections correlate
    place, theme, and period.
    """
    chronos = [(f"c{c}", "chronos", c) for c in centuries]
    topos = [(f"t{i}", "topos", f"terr-{i}") for i in range(n_topos)]
    thema = [(f"k{i}", "thema", f"concept-{i}") for i in range(n_thema)]
    topos_ids = [t[0] for t in topos]
    thema_ids = [k[0] for k in thema]
    topos_edges = random_tree_edges(topos_ids, rng)
    thema_edges = random_tree_edges(thema_ids, rng)

    def neighborhoods(ids, edges):
        near = {i: [i] for i in ids}
        for a, b in edges:
            near[a].append(b)
            near[b].append(a)
        return near

    t_near = neighborhoods(topos_ids, topos_edges)
    k_near = neighborhoods(thema_ids, thema_edges)
    cents = list(centuries)
    centers = [
        (
            topos_ids[int(rng.integers(n_topos))],
            thema_ids[int(rng.integers(n_thema))],
            cents[int(rng.integers(len(cents)))],
        )
        for _ in range(n_clusters)
    ]
    objects = []
    for i in range(n_objects):
        tc, kc, cc = centers[int(rng.integers(n_clusters))]
        t = t_near[tc][int(rng.integers(len(t_near[tc])))]
        k = k_near[kc][int(rng.integers(len(k_near[kc])))]
        c = min(max(cents[0], cc + int(rng.integers(3)) - 1), cents[-1])
        objects.append((f"ob{i}", [f"c{c}", t, k]))
    return build_catalog(
        entities=chronos + topos + thema,
        objects=objects,
        topos_edges=topos_edges,
        thema_edges=thema_edges,
    )
