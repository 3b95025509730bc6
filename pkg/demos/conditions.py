"""Condition expressions: primitive rewrites, synthesis and lifting."""

from realizab.machine import Process, reaches
from realizab.terms import Const, Stack
from realizab.wedge import chain, derived_table, lift, parse_wedge, pretty_wedge, spine_term, synth

# the derived swap-inside expression, one part at a time
g = derived_table()["β3"]
print(g, "=", g.expanded())
for t in chain(g, parse_wedge("p^(q^r)")):
    print("  ", pretty_wedge(t))

# synthesize a witness for a reshuffle and check it on the machine
g = synth("p^(q^r)", "(r^p)^q")
print(f"\nsynthesized {len(g)} primitives for p∧(q∧r) ⇒ (r∧p)∧q")
xi, tau = Const("ξ"), Const("τ")
start = Process(lift(g), Stack((xi, tau)))
print("lifted term moves τ to γτ:", reaches(start, Process(xi, Stack((spine_term(g, tau),)))))
