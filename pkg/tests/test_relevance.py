"""Relevance engine: decay, reinforcement, decrease, diffusion, pruning."""

from __future__ import annotations

import math

import numpy as np
import pytest

from museum_explorer.dataspace import Dimension
from museum_explorer.params import Params
from museum_explorer.relevance import (
    Interaction,
    InteractionType,
    RelevanceState,
    Trace,
    TraceError,
    interaction_weight,
    propagate,
    record_interaction,
    relevance_to_color,
    tick,
    top_relevant,
)

from conftest import build_catalog, random_catalog
from engine_reference import reference_relevance

TOOL = InteractionType.TOOL_USE


def entity_line_catalog(n: int = 5, edges: str = "chain"):
    """n thema concepts in a chain (or isolated), one object touching all."""
    entities = [("c1", "chronos", 1), ("t1", "topos", "t")]
    entities += [(f"k{i}", "thema", f"c-{i}") for i in range(n)]
    thema_edges = [(f"k{i}", f"k{i+1}") for i in range(n - 1)] if edges == "chain" else []
    return build_catalog(
        entities=entities,
        objects=[("ob", ["c1", "t1"] + [f"k{i}" for i in range(n)])],
        thema_edges=thema_edges,
    )


def star_catalog(arms: int = 4):
    """Hub concept k0 with ``arms`` direct neighbors."""
    entities = [("c1", "chronos", 1), ("t1", "topos", "t")]
    entities += [(f"k{i}", "thema", f"c-{i}") for i in range(arms + 1)]
    return build_catalog(
        entities=entities,
        objects=[("ob", ["c1", "t1", "k0"])],
        thema_edges=[("k0", f"k{i}") for i in range(1, arms + 1)],
    )


def fresh(catalog, params):
    return RelevanceState.initial(catalog, params)


# -- record_interaction ---------------------------------------------------


def test_first_interaction_recorded():
    cat = entity_line_catalog()
    params = Params()
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.3, 0.0), state, cat)
    assert len(trace) == 1


def test_same_timestamp_entries_keep_order():
    cat = entity_line_catalog()
    params = Params()
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.3, 0.0), state, cat)
    record_interaction(trace, Interaction.make(TOOL, ["k1"], 0.3, 0.0), state, cat)
    assert [e.entities for e in trace.entries] == [("k0",), ("k1",)]


def test_empty_entity_set_rejected():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    with pytest.raises(TraceError, match="empty"):
        record_interaction(Trace(), Interaction.make(TOOL, [], 0.3, 0.0), state, cat)


def test_unknown_entity_rejected():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    with pytest.raises(TraceError, match="ghost"):
        record_interaction(Trace(), Interaction.make(TOOL, ["ghost"], 0.3, 0.0), state, cat)


def test_timestamp_regression_rejected():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    state.clock = 10.0
    with pytest.raises(TraceError, match="regress"):
        record_interaction(Trace(), Interaction.make(TOOL, ["k0"], 0.3, 5.0), state, cat)


# -- interaction_weight ---------------------------------------------------


def test_weight_at_emission_time_is_base_weight():
    i = Interaction.make(TOOL, ["k0"], 0.3, 12.0)
    assert interaction_weight(i, 12.0, lam=0.5) == 0.3


def test_weight_halves_after_half_life():
    lam = math.log(2) / 30.0
    i = Interaction.make(TOOL, ["k0"], 0.8, 0.0)
    assert interaction_weight(i, 30.0, lam) == pytest.approx(0.4, abs=1e-12)
    assert interaction_weight(i, 60.0, lam) == pytest.approx(0.2, abs=1e-12)


def test_half_life_closed_form_matches_iterated_decay():
    lam = math.log(2) / 30.0
    i = Interaction.make(TOOL, ["k0"], 1.0, 0.0)
    # iterate one-second decay factors and compare against the closed form
    value = 1.0
    factor = math.exp(-lam)
    for t in range(1, 301):
        value *= factor
        assert abs(interaction_weight(i, float(t), lam) - value) < 1e-12


# -- tick -----------------------------------------------------------------


def test_empty_trace_leaves_relevance_unchanged():
    cat = entity_line_catalog()
    params = Params()
    state = fresh(cat, params)
    before = dict(state.R)
    tick(state, Trace(), params, cat)
    assert state.R == before
    assert state.clock == 1.0


def test_single_entry_reinforcement_only():
    # W=0.5 at t=clock, R=0, R_max=1, tau=0, below diffusion threshold
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.0)
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.5, 0.0), state, cat)
    tick(state, trace, params, cat)
    assert state.R["k0"] == pytest.approx(0.5, abs=1e-12)


def test_single_entry_reinforcement_then_decrease():
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.1)
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.5, 0.0), state, cat)
    tick(state, trace, params, cat)
    assert state.R["k0"] == pytest.approx(0.45, abs=1e-12)


def test_decrease_applied_once_per_entity_not_per_entry():
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.5, lam=1000.0, s_d=0.99)  # huge lam kills reinforcement instantly
    state = fresh(cat, params)
    state.R["k0"] = 0.8
    trace = Trace()
    # two very old entries touching k0: their weight is ~0 but they mark it touched
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.3, 0.0), state, cat)
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.3, 0.0), state, cat)
    state.clock = 0.9  # within regression tolerance of the entries above
    params2 = Params(tau=0.5, lam=1000.0, s_d=0.99, epsilon_prune=0.0)
    tick(state, trace, params2, cat)
    # one decrease: 0.5*0 + 0.5*0.8 = 0.4 (two would give 0.2)
    assert state.R["k0"] == pytest.approx(0.4, abs=1e-9)


def test_global_decrease_flag_reduces_untouched_entities():
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.1, global_decrease=True)
    state = fresh(cat, params)
    state.R["k4"] = 0.5
    tick(state, Trace(), params, cat)
    assert state.R["k4"] == pytest.approx(0.45, abs=1e-12)


def test_future_entries_do_not_reinforce():
    cat = entity_line_catalog(edges="none")
    params = Params()
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.5, 3.0), state, cat)
    tick(state, trace, params, cat)
    assert state.R["k0"] == 0.0


def test_negative_weight_pushes_down_and_clamps():
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.0)
    state = fresh(cat, params)
    state.R["k0"] = 0.1
    trace = Trace()
    record_interaction(trace, Interaction.make(InteractionType.BASKET_REMOVE, ["k0"], -0.3, 0.0), state, cat)
    tick(state, trace, params, cat)
    # 0.1 + (-0.3)*(1-0.1) = -0.17 -> clamped to r_min
    assert state.R["k0"] == 0.0


def test_per_entity_bounds_override_globals():
    cat = build_catalog(
        entities=[
            ("c1", "chronos", 1), ("t1", "topos", "t"),
            ("k-capped", "thema", "a", None, 0.5),  # r_max = 0.5 for this entity only
            ("k-floor", "thema", "b", 0.2, None),   # r_min = 0.2
        ],
        objects=[("ob", ["c1", "t1", "k-capped", "k-floor"])],
    )
    params = Params(tau=0.0)
    state = fresh(cat, params)
    assert state.R["k-floor"] == 0.2  # initialized at its own minimum
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k-capped"], 0.9, 0.0), state, cat)
    for _ in range(20):
        tick(state, trace, params, cat)
    assert state.R["k-capped"] <= 0.5
    assert state.R["k-capped"] == pytest.approx(0.5, abs=1e-3)


# -- propagation ------------------------------------------------------------


def test_propagation_shares_and_conserves():
    cat = star_catalog(arms=4)
    params = Params(gamma=0.25, s_d=0.5)
    state = fresh(cat, params)
    state.R["k0"] = 0.8
    total_before = sum(state.R.values())
    donors = propagate(state, params, cat)
    assert donors == ["k0"]
    assert state.R["k0"] == pytest.approx(0.6, abs=1e-12)
    for i in range(1, 5):
        assert state.R[f"k{i}"] == pytest.approx(0.05, abs=1e-12)
    assert sum(state.R.values()) == pytest.approx(total_before, abs=1e-12)


def test_no_diffusion_at_or_below_threshold():
    cat = star_catalog()
    params = Params(s_d=0.8, gamma=0.25)
    state = fresh(cat, params)
    state.R["k0"] = 0.8  # not strictly above
    assert propagate(state, params, cat) == []
    assert state.R["k0"] == 0.8


def test_cooldown_blocks_rediffusion():
    cat = star_catalog()
    params = Params(s_d=0.5, gamma=0.25, cooldown=10.0)
    state = fresh(cat, params)
    state.R["k0"] = 0.9
    state.clock = 20.0
    state.last_diffusion["k0"] = 17.0  # diffused 3 s ago
    assert propagate(state, params, cat) == []
    state.last_diffusion["k0"] = 10.0  # exactly cooldown ago
    assert propagate(state, params, cat) == ["k0"]


def test_isolated_entity_never_diffuses_or_consumes_cooldown():
    cat = entity_line_catalog(n=1, edges="none")
    params = Params(s_d=0.5)
    state = fresh(cat, params)
    state.R["k0"] = 0.9
    assert propagate(state, params, cat) == []
    assert "k0" not in state.last_diffusion


def test_simultaneous_donors_use_snapshot_values():
    # two adjacent hot concepts: each donation is computed before any transfer
    cat = entity_line_catalog(n=2, edges="chain")
    params = Params(s_d=0.5, gamma=0.2)
    state = fresh(cat, params)
    state.R["k0"] = 0.9
    state.R["k1"] = 0.8
    propagate(state, params, cat)
    assert state.R["k0"] == pytest.approx(0.9 * 0.8 + 0.2 * 0.8, abs=1e-12)
    assert state.R["k1"] == pytest.approx(0.8 * 0.8 + 0.2 * 0.9, abs=1e-12)


def test_propagation_conservation_fuzz():
    rng = np.random.default_rng(99)
    cat = random_catalog(rng, n_objects=4)
    # generous headroom so clamping never interferes
    params = Params(s_d=0.5, gamma=0.3, cooldown=2.0, r_max=50.0)
    state = fresh(cat, params)
    for step in range(500):
        de = sorted(state.R)[int(rng.integers(len(state.R)))]
        state.R[de] += float(rng.random())
        before = math.fsum(state.R.values())
        propagate(state, params, cat)
        after = math.fsum(state.R.values())
        assert abs(after - before) < 1e-9
        state.clock += 1.0


# -- pruning ----------------------------------------------------------------


def test_pruned_entries_never_affect_relevance_again():
    # tau=0 isolates the pruning effect: with decrease active the unpruned
    # baseline keeps reducing touched entities forever and the runs drift
    # apart regardless of epsilon, so the stated tolerance only binds right
    # after the entries die.
    cat = entity_line_catalog(edges="none")
    pruned = Params(epsilon_prune=1e-3, tau=0.0)
    unpruned = Params(epsilon_prune=0.0, tau=0.0)

    def run(params, ticks):
        state = fresh(cat, params)
        trace = Trace()
        record_interaction(trace, Interaction.make(TOOL, ["k0", "k2"], 0.4, 0.0), state, cat)
        record_interaction(trace, Interaction.make(TOOL, ["k1"], 0.4, 0.0), state, cat)
        for _ in range(ticks):
            tick(state, trace, params, cat)
        return state, trace

    # find the first tick at which everything is dead under pruning
    probe_state, probe_trace = run(pruned, 0)
    death_tick = 0
    while not all(probe_trace.dead):
        tick(probe_state, probe_trace, pruned, cat)
        death_tick += 1
        assert death_tick < 1000, "entries never decayed below epsilon"

    horizon = death_tick + 2
    state_a, trace_a = run(pruned, horizon)
    state_b, trace_b = run(unpruned, horizon)
    assert any(trace_a.dead) and not any(trace_b.dead)
    tolerance = pruned.epsilon_prune * len(trace_a.entries)
    for de in state_a.R:
        assert abs(state_a.R[de] - state_b.R[de]) <= tolerance

    # the invariant itself: once every entry is dead, R is frozen for good
    frozen = dict(state_a.R)
    for _ in range(300):
        tick(state_a, trace_a, pruned, cat)
    assert state_a.R == frozen


# -- bounds and monotonicity -------------------------------------------------


def test_bounds_hold_under_fuzzed_traces():
    rng = np.random.default_rng(4242)
    cat = random_catalog(rng, n_objects=6)
    params = Params(s_d=0.4, gamma=0.3, cooldown=3.0)
    state = fresh(cat, params)
    trace = Trace()
    weights = [0.05, 0.2, 0.4, -0.3, 0.1, 0.3]
    ids = sorted(cat.entities)
    for now in range(2000):
        if rng.random() < 0.4:
            k = 1 + int(rng.integers(3))
            ents = [ids[int(i)] for i in rng.choice(len(ids), size=k, replace=False)]
            w = weights[int(rng.integers(len(weights)))]
            record_interaction(trace, Interaction.make(TOOL, ents, w, float(now)), state, cat)
        tick(state, trace, params, cat)
        for de, r in state.R.items():
            assert 0.0 <= r <= 1.0, f"{de} escaped bounds at tick {now}: {r}"


def test_reinforcement_monotone_without_decrease_or_diffusion():
    cat = entity_line_catalog(edges="none")
    params = Params(tau=0.0, gamma=0.5, s_d=0.99, epsilon_prune=0.0)
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.35, 0.0), state, cat)
    previous = 0.0
    for now in range(1, 200):
        if now % 7 == 0:
            record_interaction(trace, Interaction.make(TOOL, ["k0"], 0.35, float(now - 1)), state, cat)
        tick(state, trace, params, cat)
        assert state.R["k0"] >= previous - 1e-15
        assert state.R["k0"] <= 1.0
        previous = state.R["k0"]


# -- oracle equivalence -------------------------------------------------------


def test_engine_matches_straight_line_reference(sample_catalog):
    params = Params()
    rng = np.random.default_rng(5)
    state = RelevanceState.initial(sample_catalog, params)
    trace = Trace()
    raw_trace = []
    object_ids = sorted(sample_catalog.objects)
    weights = [0.05, 0.1, 0.2, 0.3, 0.4]
    for now in range(100):
        if rng.random() < 0.35:
            ob = sample_catalog.objects[object_ids[int(rng.integers(len(object_ids)))]]
            ents = tuple(sorted(ob.entities))
            w = weights[int(rng.integers(len(weights)))]
            record_interaction(trace, Interaction.make(TOOL, ents, w, float(now)), state, sample_catalog)
            raw_trace.append((ents, w, float(now)))
        tick(state, trace, params, sample_catalog)

    expected = reference_relevance(
        entities={
            e.id: (e.dimension.value, e.payload if e.dimension is Dimension.CHRONOS else None)
            for e in sample_catalog.entities.values()
        },
        topos_edges=sample_catalog.topos_edges,
        thema_edges=sample_catalog.thema_edges,
        trace=raw_trace,
        ticks=100,
        lam=params.lam,
        tau=params.tau,
        s_d=params.s_d,
        gamma=params.gamma,
        cooldown=params.cooldown,
        thresholds={d.value: t for d, t in params.neighbor_thresholds.items()},
    )
    for de in expected:
        assert state.R[de] == pytest.approx(expected[de], abs=1e-6)


# -- color map and ranking ----------------------------------------------------


def test_color_endpoints_and_midpoint():
    assert relevance_to_color(1.0, 0.0, 1.0) == 1.0
    assert relevance_to_color(0.0, 0.0, 1.0) == 0.0
    assert relevance_to_color(0.5, 0.0, 1.0) == 0.5
    assert relevance_to_color(0.3, 0.3, 0.3) == 0.0  # degenerate range


def test_top_relevant_tie_break_is_lexicographic():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    ranked = top_relevant(state, 3)
    assert [de for de, _ in ranked] == sorted(state.R)[:3]


def test_top_relevant_k_exceeding_population_returns_all():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    assert len(top_relevant(state, 100)) == len(state.R)


def test_top_relevant_ranks_reinforced_entity_first():
    cat = entity_line_catalog(edges="none")
    params = Params()
    state = fresh(cat, params)
    trace = Trace()
    record_interaction(trace, Interaction.make(TOOL, ["k3"], 0.4, 0.0), state, cat)
    tick(state, trace, params, cat)
    assert top_relevant(state, 1)[0][0] == "k3"
    assert top_relevant(state, 1, exclude={"k3"})[0][0] != "k3"


def test_top_relevant_is_pure():
    cat = entity_line_catalog()
    state = fresh(cat, Params())
    state.R["k2"] = 0.7
    a = top_relevant(state, 4, exclude={"k0"})
    b = top_relevant(state, 4, exclude={"k0"})
    assert a == b
