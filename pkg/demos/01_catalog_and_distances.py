"""Load the sample catalog and poke at the three distance metrics.

Run: python demos/01_catalog_and_distances.py
"""

from museum_explorer import Dimension, load_catalog, sample_catalog_path

catalog = load_catalog(sample_catalog_path())
print(f"catalog: {len(catalog.objects)} objects, {len(catalog.entities)} entities\n")

# Every object carries at least one entity per dimension.
ob = catalog.objects["ob-phare-saint-mathieu"]
print(f"{ob.name}: {sorted(ob.entities)}")

# Chronos distance counts centuries, Topos and Thema count graph hops.
print("\ndistance examples")
print("  c17 .. c20       ->", catalog.distance("c17", "c20"), "centuries apart")
print("  brest .. vannes  ->", catalog.distance("brest", "vannes"), "territories on the shortest path")
print("  lighthouse .. navigation ->", catalog.distance("lighthouse", "navigation"), "(direct semantic link)")
print("  lighthouse .. chapel     ->", catalog.distance("lighthouse", "chapel"))

# Threshold neighborhoods drive relevance diffusion.
thresholds = {Dimension.CHRONOS: 1, Dimension.TOPOS: 1, Dimension.THEMA: 1}
for de in ("c19", "navigation", "brest"):
    print(f"  neighbors({de}) at 1 -> {sorted(catalog.neighbors(de, thresholds))}")

# Object distance sums the closest pairing per dimension; it feeds the
# spring rest lengths of the room layout.
print("\nobject distances")
pairs = [
    ("ob-phare-saint-mathieu", "ob-phare-eckmuhl"),
    ("ob-phare-saint-mathieu", "ob-pont-recouvrance"),
    ("ob-phare-saint-mathieu", "ob-fest-noz"),
]
for a, b in pairs:
    print(f"  {catalog.objects[a].name:28s} .. {catalog.objects[b].name:28s} -> {catalog.object_distance(a, b)}")
