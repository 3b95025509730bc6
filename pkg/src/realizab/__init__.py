"""A workbench for classical realizability: a stack machine with continuations, a
combinator compiler, forcing conditions and a catalog of realizers."""

from . import arith, balgebra, corpus, logic, machine, pole, terms, wedge
from .machine import Process, StackCodec, Trace, reaches, run, step
from .terms import (
    App, Atom, Const, Cont, Lam, Num, Stack, Var,
    app, lam, stack, parse_lterm, parse_cterm, parse_stack,
    print_cterm, print_lterm, print_stack, substitute, eliminate_abstraction,
    compile_term,
)
from .wedge import cexpr, parse_wedge, synth, witnesses

__version__ = "0.1.0"

__all__ = [
    "arith", "balgebra", "corpus", "logic", "machine", "pole", "terms", "wedge",
    "Process", "StackCodec", "Trace", "reaches", "run", "step",
    "App", "Atom", "Const", "Cont", "Lam", "Num", "Stack", "Var",
    "app", "lam", "stack", "parse_lterm", "parse_cterm", "parse_stack",
    "print_cterm", "print_lterm", "print_stack", "substitute",
    "eliminate_abstraction", "compile_term",
    "cexpr", "parse_wedge", "synth", "witnesses",
]
