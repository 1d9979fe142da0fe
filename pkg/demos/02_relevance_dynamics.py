"""Watch relevance rise, decay, and diffuse as interactions come and go.

A single concept is hammered for a few seconds; its relevance climbs
toward the maximum, spills over to graph neighbors once it crosses the
diffusion threshold, then fades as the trace weights decay.

Run: python demos/02_relevance_dynamics.py
"""

from museum_explorer import (
    Interaction,
    InteractionType,
    Params,
    RelevanceState,
    Trace,
    load_catalog,
    record_interaction,
    relevance_to_color,
    sample_catalog_path,
    tick,
)

catalog = load_catalog(sample_catalog_path())
params = Params()
state = RelevanceState.initial(catalog, params)
trace = Trace()

WATCHED = ["fishing", "navigation", "shipbuilding", "lighthouse"]


def bar(value: float, width: int = 24) -> str:
    filled = int(round(value * width))
    return "#" * filled + "." * (width - filled)


print("tick  " + "".join(f"{de:>14s}" for de in WATCHED))
for now in range(40):
    if now < 8:  # the user clicks the 'fishing' word for 8 straight seconds
        record_interaction(
            trace,
            Interaction.make(InteractionType.TOOL_USE, ["fishing"], params.weight_table[InteractionType.TOOL_USE], float(now)),
            state,
            catalog,
        )
    tick(state, trace, params, catalog)
    if now % 4 == 3:
        row = "".join(f"{state.R[de]:>14.3f}" for de in WATCHED)
        print(f"{now:4d}  {row}")

print("\nfinal feedback hues (0 = red, 1 = green)")
for de in WATCHED:
    hue = relevance_to_color(state.R[de], params.r_min, params.r_max)
    print(f"  {de:14s} {hue:5.2f}  {bar(hue)}")

print("\nnote how 'navigation' (a direct neighbor) inherited relevance that")
print("'fishing' diffused once it passed the threshold, while everything")
print("decays once the interactions stop.")
