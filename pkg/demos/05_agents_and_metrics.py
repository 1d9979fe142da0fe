"""Compare the three synthetic strolling policies over identical budgets.

Focused chases one entity, Wanderer keeps opening doors, Random mixes
everything.  Metrics summarize how much museum each style produces and
how serendipitous the exposed objects are.

Run: python demos/05_agents_and_metrics.py
"""

from museum_explorer import load_catalog, sample_catalog_path
from museum_explorer.harness import emit_metrics, run_agent

catalog = load_catalog(sample_catalog_path())
STEPS = 120
SEED = 4

print(f"{STEPS} ticks each, seed {SEED}\n")
for policy, extra in (("focused", {"target": "granite"}), ("wanderer", {}), ("random", {})):
    metrics, session = run_agent(catalog, None, policy, STEPS, seed=SEED, **extra)
    print(f"== {policy} {extra or ''}")
    print(emit_metrics(metrics, "table"))
    hottest = max(session.state.R, key=session.state.R.get)
    print(f"hottest entity at the end: {hottest} (R={session.state.R[hottest]:.3f})\n")
