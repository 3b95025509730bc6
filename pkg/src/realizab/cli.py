"""Command-line entry point.

Exit codes: 0 on success, 1 when a check fails, 2 on usage or parse
errors.  Output is deterministic for a given invocation and seed.
"""

from __future__ import annotations

import argparse
import random
import shlex
import sys

from . import arith, balgebra, corpus, logic, pole, wedge
from .machine import Process, run
from .terms import (
    ATOM_NAMES, App, Const, Lam, ParseError, Stack, Var, compile_term, free_vars,
    parse_lterm, parse_stack, print_cterm, print_process,
)


class UsageError(Exception):
    pass


def _constants_except(t, bound):
    """Free identifiers of CLI input become test constants."""
    if isinstance(t, Var):
        return t if t.name in bound else Const(t.name)
    if isinstance(t, App):
        return App(_constants_except(t.fun, bound), _constants_except(t.arg, bound))
    if isinstance(t, Lam):
        return Lam(t.var, _constants_except(t.body, bound | {t.var}))
    return t


def parse_input_term(text):
    t = parse_lterm(text)
    bad = sorted(n for n in free_vars(t) if n in ATOM_NAMES)
    if bad:
        raise UsageError(f"{bad[0]} is an atom name")
    return compile_term(_constants_except(t, frozenset()))


class Runner:
    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.out = sys.stdout

    def emit(self, text=""):
        print(text, file=self.out)

    def row(self, *fields):
        """A result line: tab-separated in tsv mode, aligned otherwise."""
        if self.args.output == "tsv":
            self.emit("\t".join(str(f) for f in fields))
        else:
            self.emit("  ".join(str(f) for f in fields))

    def failed(self, msg=""):
        if msg:
            self.emit(msg)
        self.emit(f"replay: {shlex.join(['realizab'] + list(self.argv))}")
        return 1


# ------------------------------------------------------------ subcommands

def cmd_compile(r: Runner):
    r.emit(print_cterm(parse_input_term(r.args.term)))
    return 0


def cmd_run(r: Runner):
    a = r.args
    head = parse_input_term(a.term)
    s = parse_stack(a.stack) if a.stack else Stack()
    final, tr = run(Process(head, s), a.budget, keep=a.trace == "full")
    if a.trace == "full":
        for line in tr.lines():
            r.emit(line)
    elif a.trace == "final":
        r.emit(print_process(final.head, final.stack))
    r.emit(f"status: {tr.status} after {tr.count} steps" + (f" ({tr.reason})" if tr.reason else ""))
    if tr.status == "budget-exhausted":
        return r.failed()
    return 0


def cmd_gamma(r: Runner):
    a = r.args
    if a.action == "list":
        bad = 0
        for name, g in wedge.gamma_table().items():
            t, u = wedge.spec_of(name)
            ok = wedge.witnesses(g, t, u)
            bad += not ok
            r.row(name, wedge.pretty_wedge(t), "⇒", wedge.pretty_wedge(u), "VERIFIED" if ok else "FAILED")
        return r.failed() if bad else 0
    if not (a.src and a.dst):
        raise UsageError("gamma synth needs --from and --to")
    t, u = wedge.parse_wedge(a.src), wedge.parse_wedge(a.dst)
    try:
        g = wedge.synth(t, u)
    except (wedge.MatchFailure, ValueError, AssertionError) as e:
        return r.failed(f"no C-expression: {e}")
    r.emit(g.expanded())
    for step in wedge.chain(g, t):
        r.emit(f"  {wedge.pretty_wedge(step)}")
    if not wedge.witnesses(g, t, u):
        return r.failed("FAILED")
    r.emit("VERIFIED")
    return 0


def cmd_force(r: Runner):
    a = r.args
    f = logic.parse_formula(a.formula)
    r.emit(logic.print_formula(logic.force(a.p, f), ascii=a.ascii))
    if a.structure:
        r.emit(f"structure: {logic.print_ps(logic.prop_structure(f))}")
    return 0


def cmd_pole(r: Runner):
    a = r.args
    if a.action == "laws":
        reports = pole.run_laws(a.universes, a.trials, a.seed, broken=a.broken)
        bad = False
        for rep in reports.values():
            r.emit(rep.line())
            for useed, v in rep.failures[:1]:
                r.emit(f"  universe {useed}: {v}")
            bad |= not rep.ok
        # with --broken a counterexample is the expected outcome
        return (0 if bad else r.failed("broken variant not detected")) if a.broken else \
            (r.failed() if bad else 0)
    if not (a.term and a.formula):
        raise UsageError("pole falsify needs --term and --formula")
    xi = parse_input_term(a.term)
    f = logic.parse_formula(a.formula)
    censored = trials = 0
    for k in range(a.universes):
        useed = a.seed * 1_000_003 + k
        u = pole.Universe.sample(useed, budget=min(a.budget, 400))
        v = pole.falsify(xi, f, u, a.trials, random.Random(f"{useed}:cli"))
        censored += v.censored
        trials += v.trials
        if not v.ok:
            r.emit(f"universe {useed}: {v}")
            r.row("falsify", "COUNTEREXAMPLE", f"seed={a.seed}", f"universe={useed}",
                  f"trials={trials}", f"censored={censored}")
            return r.failed()
    r.emit(f"no counterexample in {a.universes} universe(s) x {a.trials} trials (evidence only)")
    r.row("falsify", "ok", f"seed={a.seed}", f"universes={a.universes}",
          f"trials={trials}", f"censored={censored}")
    return 0


def cmd_balg(r: Runner):
    a = r.args
    if a.action == "translate":
        if not a.arg:
            raise UsageError("balg translate needs a term")
        bt = balgebra.translate(parse_input_term(a.arg))
        r.emit(f"term: {print_cterm(bt.term)}")
        r.emit(f"condition: {wedge.pretty_wedge(bt.condition)}")
        return 0
    which = a.arg or "lifted"
    if which == "lifted":
        cases = [a.case] if a.case else list(balgebra.LIFTED_RULES)
        reps = [balgebra.b_step_check(c, a.budget) for c in cases]
    elif which == "model":
        ns = [a.n] if a.n is not None else range(7)
        reps = []
        for n in ns:
            reps += [balgebra.check_g(n), balgebra.check_j(n), balgebra.check_J(n), balgebra.check_S(n)]
        reps.append(balgebra.check_T())
    else:
        raise UsageError(f"unknown check {which!r}; use lifted or model")
    bad = 0
    for rep in reps:
        for line in rep.lines():
            r.emit(line)
        bad += not rep.ok
    return r.failed() if bad else 0


def cmd_arith(r: Runner):
    a = r.args
    if a.name == "list":
        for n in arith.catalog_names():
            r.row(n, f"arity={arith.arity(n)}", "branch" if arith.oracle(n) is None else "function")
        return 0
    try:
        term = arith.arith_term(a.name)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    args = a.apply or []
    if len(args) != arith.arity(a.name):
        raise UsageError(f"{a.name} takes {arith.arity(a.name)} argument(s)")
    f = arith.oracle(a.name)
    names = (Const("ξ"), Const("η"), Const("ζ"))
    if f is None:
        items = tuple(arith.numeral(m) for m in args) + names
    else:
        items = tuple(arith.numeral(m) for m in args) + (Const("κ"),)
    final, tr = run(Process(term, Stack(items)), a.budget, keep=a.trace)
    if a.trace:
        for line in tr.lines():
            r.emit(line)
    if f is None:
        r.emit(f"branch: {print_cterm(final.head)}")
        return 0 if tr.status == "done" else r.failed(f"status {tr.status}")
    got = arith.numeral_value(final.stack.items[0]) if final.stack.items else None
    r.emit(f"{a.name}({', '.join(map(str, args))}) = {got}   expected {f(*args)}   steps={tr.count}")
    return 0 if got == f(*args) and final.head == Const("κ") else r.failed()


def cmd_corpus(r: Runner):
    a = r.args
    cat = corpus.catalog()
    if a.action == "list":
        for name, e in cat.items():
            r.row(name, "closed" if e.closed else "OPEN", f"claims={len(e.claims)}", e.source)
        return 0
    if not a.name:
        raise UsageError("corpus replay needs an entry name or 'all'")
    names = list(cat) if a.name == "all" else [corpus.resolve(a.name)]
    bad = 0
    for name in names:
        for res in corpus.replay(name, a.budget):
            r.row(name, res.label, res.status, f"steps={res.steps}")
            if not res.ok:
                bad += 1
                r.emit(f"  {res.detail}")
    return r.failed() if bad else 0


def cmd_nd(r: Runner):
    a = r.args
    ex = logic.example_derivations()
    names = list(ex) if a.name in (None, "all", "list") else [a.name]
    bad = 0
    for n in names:
        if n not in ex:
            raise UsageError(f"unknown derivation {n!r}")
        d, ctx, should = ex[n]
        try:
            j = logic.nd_check(d, ctx)
            verdict, detail = "accepted", str(j)
        except logic.NDError as e:
            verdict, detail = "rejected", str(e)
        expected = verdict == ("accepted" if should else "rejected")
        bad += not expected
        r.row(n, verdict, "as expected" if expected else "UNEXPECTED", detail)
    return r.failed() if bad else 0


# ------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="realizab", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=100_000, help="machine step budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("text", "tsv"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compile", help="compile a lambda-term to combinators")
    s.add_argument("term")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("run", help="run the machine")
    s.add_argument("term")
    s.add_argument("--stack", default="")
    s.add_argument("--trace", choices=("none", "final", "full"), default="final")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("gamma", help="synthesize and verify C-expressions")
    s.add_argument("action", choices=("synth", "list"))
    s.add_argument("--from", dest="src")
    s.add_argument("--to", dest="dst")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("force", help="print the forcing transform p ⊩ F")
    s.add_argument("-p", required=True, help="condition term")
    s.add_argument("-f", "--formula", required=True)
    s.add_argument("--ascii", action="store_true")
    s.add_argument("--structure", action="store_true", help="also print the propositional structure")
    s.set_defaults(func=cmd_force)

    s = sub.add_parser("pole", help="falsification over random finite universes")
    s.add_argument("action", choices=("falsify", "laws"))
    s.add_argument("--term")
    s.add_argument("--formula")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--universes", type=int, default=1)
    s.add_argument("--broken", action="store_true", help="laws: run the K-for-cc variant")
    s.set_defaults(func=cmd_pole)

    s = sub.add_parser("balg", help="lifted algebra chains and translation")
    s.add_argument("action", choices=("check", "translate"))
    s.add_argument("arg", nargs="?", help="check: lifted|model; translate: a term")
    s.add_argument("--case", choices=balgebra.LIFTED_RULES)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_balg)

    s = sub.add_parser("arith", help="run an arithmetic catalog term")
    s.add_argument("name", help="catalog name, or 'list'")
    s.add_argument("--apply", type=int, nargs="+")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_arith)

    s = sub.add_parser("corpus", help="catalog of named realizers")
    s.add_argument("action", choices=("list", "replay"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("nd", help="check the example natural-deduction derivations")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_nd)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return 2
    r = Runner(args, argv)
    try:
        return args.func(r)
    except (UsageError, ParseError, logic.FormulaSyntaxError, KeyError,
            wedge.MatchFailure, balgebra.TranslationError, logic.ForcingError,
            pole.UnsupportedFormula) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
