"""The process machine: twelve reduction rules, traces and the stack codec."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .terms import (
    App, Atom, Const, Cont, Num, Stack, Var, print_cterm, print_stack,
)

DEFAULT_BUDGET = 100_000

# arities of the elementary combinators
_ARITY = {"I": 1, "K": 2, "E": 2, "W": 2, "C": 3, "B": 3, "cc": 1,
          "qt": 1, "rd": 2, "wr": 2}


@dataclass(frozen=True, slots=True)
class Process:
    head: object
    stack: Stack

    def __str__(self):
        return f"{print_cterm(self.head)} ⋆ {print_stack(self.stack)}"


@dataclass(frozen=True, slots=True)
class Stuck:
    reason: str
    kind: str  # "opaque" (variable or constant head), "arity", "rd-empty"


class StackCodec:
    """Injective numbering of stacks, first seen gets the next number."""

    def __init__(self):
        self._code: dict = {}
        self._stacks: list = []

    def encode(self, s: Stack) -> int:
        n = self._code.get(s)
        if n is None:
            n = len(self._stacks)
            self._code[s] = n
            self._stacks.append(s)
        return n

    def decode(self, n: int) -> Optional[Stack]:
        return self._stacks[n] if 0 <= n < len(self._stacks) else None

    def __len__(self):
        return len(self._stacks)


_zero_cache: list = []
_succ_cache: list = []


def _numeral_parts():
    # compiled 0 and successor, built once on first use
    if not _zero_cache:
        from .terms import compile_term, parse_lterm
        _zero_cache.append(compile_term(parse_lterm(r"\x \y y")))
        _succ_cache.append(compile_term(parse_lterm(r"\n \f \x (f)(n) f x")))
    return _zero_cache[0], _succ_cache[0]


def step(p: Process, codec: Optional[StackCodec] = None):
    """One machine step.  Returns (rule, Process) or a Stuck value."""
    head, s = p.head, p.stack
    if isinstance(head, App):
        return "push", Process(head.fun, Stack((head.arg,) + s.items, s.base))
    if isinstance(head, Num):
        zero, succ = _numeral_parts()
        if head.n == 0:
            return "num", Process(zero, s)
        return "num", Process(App(succ, Num(head.n - 1)), s)
    if isinstance(head, (Var, Const)):
        return Stuck(f"opaque head {print_cterm(head)}", "opaque")
    items = s.items
    if isinstance(head, Cont):
        if not items:
            return Stuck("continuation with empty stack", "arity")
        return "k", Process(items[0], head.stack)
    if not isinstance(head, Atom):
        return Stuck(f"not a c-term head: {head!r}", "opaque")
    name = head.name
    if len(items) < _ARITY[name]:
        return Stuck(f"{name} needs {_ARITY[name]} arguments, has {len(items)}", "arity")
    base = s.base
    if name == "I":
        return "I", Process(items[0], Stack(items[1:], base))
    if name == "K":
        return "K", Process(items[0], Stack(items[2:], base))
    if name == "E":
        return "E", Process(App(items[0], items[1]), Stack(items[2:], base))
    if name == "W":
        return "W", Process(items[0], Stack((items[1], items[1]) + items[2:], base))
    if name == "C":
        return "C", Process(items[0], Stack((items[2], items[1]) + items[3:], base))
    if name == "B":
        return "B", Process(App(items[0], App(items[1], items[2])), Stack(items[3:], base))
    if name == "cc":
        rest = Stack(items[1:], base)
        return "cc", Process(items[0], Stack((Cont(rest),) + rest.items, base))
    if name == "qt":
        rest = Stack(items[1:], base)
        if codec is None:
            codec = StackCodec()
        n = codec.encode(rest)
        return "qt", Process(items[0], Stack((Num(n),) + rest.items, base))
    if name == "rd":
        # rd ⋆ ξ·π^τ ≻ ξ ⋆ τ·π : the deepest item moves to the top
        rest = items[1:]
        if not rest:
            return Stuck("rd on a stack with no items", "rd-empty")
        return "rd", Process(items[0], Stack((rest[-1],) + rest[:-1], base))
    if name == "wr":
        # wr ⋆ ξ·τ·π ≻ ξ ⋆ π^τ
        return "wr", Process(items[0], Stack(items[2:] + (items[1],), base))
    raise AssertionError(name)


@dataclass
class Trace:
    steps: list = field(default_factory=list)   # (rule, Process)
    status: str = "running"                     # done | stuck | budget-exhausted | reached
    reason: str = ""
    count: int = 0                              # machine steps taken

    def lines(self):
        for i, (rule, p) in enumerate(self.steps):
            yield f"{i} {rule} | {print_cterm(p.head)} | {print_stack(p.stack)}"

    def text(self):
        return "\n".join(self.lines())

    def __len__(self):
        return len(self.steps)


def run(p: Process, budget: int = DEFAULT_BUDGET, codec: Optional[StackCodec] = None,
        keep: bool = True, until: Optional[Callable[[Process], bool]] = None):
    """Iterate step.  Returns (final Process, Trace).

    Status is ``done`` when the head is a variable or test constant,
    ``stuck`` for missing arguments, ``budget-exhausted`` otherwise; with
    ``until`` the run stops early with status ``reached``.
    """
    if codec is None:
        codec = StackCodec()
    trace = Trace()
    if keep:
        trace.steps.append(("init", p))
    if until is not None and until(p):
        trace.status = "reached"
        return p, trace
    for _ in range(budget):
        r = step(p, codec)
        if isinstance(r, Stuck):
            trace.status = "done" if r.kind == "opaque" else "stuck"
            trace.reason = r.reason
            return p, trace
        rule, p = r
        trace.count += 1
        if keep:
            trace.steps.append((rule, p))
        if until is not None and until(p):
            trace.status = "reached"
            return p, trace
    trace.status = "budget-exhausted"
    return p, trace


def reaches(p: Process, q: Process, budget: int = DEFAULT_BUDGET,
            codec: Optional[StackCodec] = None) -> bool:
    """Decide p ≻* q along the deterministic trace of p, within budget."""
    _, trace = run(p, budget, codec, keep=False, until=lambda r: r == q)
    return trace.status == "reached"


def reaches_any(p: Process, targets, budget: int = DEFAULT_BUDGET,
                codec: Optional[StackCodec] = None):
    """Return (hit, status): whether some target is reached, and the run status."""
    targets = targets if isinstance(targets, (set, frozenset)) else set(targets)
    _, trace = run(p, budget, codec, keep=False, until=lambda r: r in targets)
    return trace.status == "reached", trace.status


def proc(head, *items, base: str = "π0") -> Process:
    return Process(head, Stack(tuple(items), base))
