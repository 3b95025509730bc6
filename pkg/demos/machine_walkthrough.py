"""Compile a few lambda-terms and watch the machine run them."""

from realizab import arith
from realizab.machine import Process, run
from realizab.terms import Const, Stack, compile_term, parse_lterm, print_cterm

a, b, kappa = Const("a"), Const("b"), Const("κ")

# swap: λxλy (y) x
swap = compile_term(parse_lterm(r"\x \y (y) x"))
print("swap compiles to", print_cterm(swap))
final, trace = run(Process(swap, Stack((a, b))))
print(trace.text())
print("status:", trace.status, "\n")

# arithmetic terms are continuation style: θ ⋆ m·κ·π ≻ κ ⋆ f(m)·π
for name, args in [("add", (2, 3)), ("d2", (9,)), ("tri", (4,))]:
    start = Process(arith.arith_term(name), Stack(tuple(arith.numeral(m) for m in args) + (kappa,)))
    final, trace = run(start, 200_000, keep=False)
    out = arith.numeral_value(final.stack.items[0])
    print(f"{name}({', '.join(map(str, args))}) = {out}  ({trace.count} steps)")
