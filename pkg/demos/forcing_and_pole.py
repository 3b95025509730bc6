"""Forcing transforms, then a falsification run over random poles."""

import random

from realizab import logic, pole
from realizab.terms import Atom

for text in ["X(x)", "A -> B", "r(x) |-> A", "forall2 X/1 X(x)"]:
    f = logic.parse_formula(text)
    print(f"p ⊩ {text}\n    {logic.print_formula(logic.force('p', f))}")

print()
rng = random.Random(0)
for head in ("cc", "K"):
    for seed in range(10):
        u = pole.Universe.sample(seed)
        v = pole.falsify(Atom(head), pole.PEIRCE, u, trials=100, rng=rng)
        if not v.ok:
            break
    print(f"{head} against Peirce's law: {v}")
