"""List the realizer catalog and replay a handful of claims."""

from realizab import corpus

cat = corpus.catalog()
print(f"{len(cat)} entries\n")
for name in ["fixpoint", "storage", "density", "inclusion-meet", "decide-2"]:
    e = cat[name]
    print(f"{name}: {e.source}")
    for r in corpus.replay(name)[:3]:
        print(f"    {r.status:12} {r.label}  ({r.steps} steps)")
