"""Falsification of realizability claims over small finite universes.

A universe fixes a handful of stack constants, a finite set ``S`` of stacks
that atomic falsity values are drawn from, a two-element individual domain,
interpretations of relation constants and a pole.  The pole is the set of
processes whose run reaches one of the universe's target processes; it is
saturated because membership only depends on the deterministic trace.

Truth values are computed over a finite pool of candidate realizers:

    |A| = {t in pool : t ⋆ π in the pole for all π in ∥A∥}
    ∥A → B∥ = {t·π : t in |A|, π in ∥B∥}

Predicate quantifiers range over every map from the domain to subsets of
``S`` (sampled when that is too many).  The pool contains every
continuation over the universe stacks, which is what the proofs of the
classical laws need.  A verdict without counterexample is evidence only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .logic import (
    EqMaps, ForallI, ForallP, Imp, IFn, IVar, Pred, RArrow, RMaps, Top,
    is_bottom, parse_formula, print_formula,
)
from .machine import Process, run
from .terms import App, Atom, Const, Cont, Num, Stack, compile_term, parse_lterm, print_stack

# ------------------------------------------------------------ ground formulas
# Formulas with every parameter replaced by its value.


@dataclass(frozen=True)
class GAtom:
    stacks: frozenset


@dataclass(frozen=True)
class GImp:
    left: object
    right: object


@dataclass(frozen=True)
class GGuard:
    """R → B with a fixed set of realizers of R."""
    terms: frozenset
    body: object


@dataclass(frozen=True)
class GUnion:
    """∀ over a finite range; ``labels`` describe each branch."""
    branches: tuple
    labels: tuple = ()


EMPTY = GAtom(frozenset())


class UnsupportedFormula(ValueError):
    pass


# ------------------------------------------------------------ universes

ITEMS = (Const("a"), Const("b"))
BASES = ("π0", "π1")


def small_stacks(depth=2):
    out = []
    for base in BASES:
        for n in range(depth + 1):
            for items in itertools.product(ITEMS, repeat=n):
                out.append(Stack(items, base))
    return out


@dataclass
class Universe:
    seed: int
    S: tuple                      # stacks atomic falsity values are drawn from
    domain: tuple                 # individuals
    relations: dict               # name -> {args tuple: frozenset of terms}
    targets: frozenset            # pole = processes reaching one of these
    pool: tuple                   # candidate realizers
    budget: int = 400
    max_families: int = 64
    censored: int = 0
    _pole: dict = field(default_factory=dict, repr=False)
    _norm: dict = field(default_factory=dict, repr=False)
    _real: dict = field(default_factory=dict, repr=False)

    @classmethod
    def sample(cls, seed: int, n_stacks=2, n_random=4, budget=400):
        rng = random.Random(seed)
        stacks = small_stacks()
        S = tuple(rng.sample(stacks, n_stacks))
        domain = (0, 1)
        choices = (frozenset(), frozenset({Atom("I")}), frozenset({Atom("I"), Atom("K")}))
        relations = {"r": {(d,): rng.choice(choices) for d in domain}}
        cand = [Process(c, s) for c in ITEMS for s in stacks]
        targets = frozenset(p for p in cand if rng.random() < 0.5)
        pool = [Atom(n) for n in ("I", "K", "W", "C", "B", "E", "cc")]
        pool += list(ITEMS)
        pool += [Cont(s) for s in stacks]
        pool += [Num(n) for n in range(6)]
        basics = [Atom("I"), Atom("K"), Atom("W"), Atom("C"), Atom("B")] + list(ITEMS)
        for _ in range(n_random):
            pool.append(App(rng.choice(basics), rng.choice(basics)))
        return cls(seed, S, domain, relations, targets, tuple(dict.fromkeys(pool)), budget)

    # -- pole
    def in_pole(self, p: Process) -> bool:
        hit = self._pole.get(p)
        if hit is None:
            _, tr = run(p, self.budget, keep=False, until=lambda q: q in self.targets)
            hit = tr.status == "reached"
            if tr.status == "budget-exhausted":
                self.censored += 1
            self._pole[p] = hit
        return hit

    # -- truth values
    def norm(self, g) -> frozenset:
        """∥g∥ as a finite set of stacks."""
        hit = self._norm.get(g)
        if hit is not None:
            return hit
        if isinstance(g, GAtom):
            out = g.stacks
        elif isinstance(g, GImp):
            out = frozenset(s.push(t) for t in self.real(g.left) for s in self.norm(g.right))
        elif isinstance(g, GGuard):
            out = frozenset(s.push(t) for t in g.terms for s in self.norm(g.body))
        else:
            out = frozenset().union(*(self.norm(b) for b in g.branches))
        self._norm[g] = out
        return out

    def real(self, g) -> tuple:
        """Pool members realizing g."""
        hit = self._real.get(g)
        if hit is not None:
            return hit
        # a fixed order keeps the set of runs (and the censored count) reproducible
        falsity = sorted(self.norm(g), key=print_stack)
        out = tuple(t for t in self.pool
                    if all(self.in_pole(Process(t, s)) for s in falsity))
        self._real[g] = out
        return out

    def realizes(self, t, g) -> bool:
        return all(self.in_pole(Process(t, s)) for s in sorted(self.norm(g), key=print_stack))

    # -- grounding
    def subsets(self):
        return [frozenset(c) for n in range(len(self.S) + 1)
                for c in itertools.combinations(self.S, n)]

    def families(self, arity, rng=None):
        """Interpretations of a predicate variable: maps args -> subset of S."""
        keys = list(itertools.product(self.domain, repeat=arity))
        subs = self.subsets()
        total = len(subs) ** len(keys)
        if total <= self.max_families:
            for vals in itertools.product(subs, repeat=len(keys)):
                yield dict(zip(keys, vals))
            return
        rng = rng or random.Random(self.seed)
        for _ in range(self.max_families):
            yield {k: rng.choice(subs) for k in keys}

    def ground(self, f, penv=None, ienv=None):
        penv = penv or {}
        ienv = ienv or {}
        if is_bottom(f):
            return GAtom(frozenset(self.S))
        if isinstance(f, Pred):
            if f.plus or f.name not in penv:
                raise UnsupportedFormula(f"no interpretation for {f.name}")
            val = penv[f.name]
            args = tuple(self.value(t, ienv) for t in f.args)
            return GAtom(val(args) if callable(val) else val[args])
        if isinstance(f, Top):
            return EMPTY
        if isinstance(f, Imp):
            return GImp(self.ground(f.left, penv, ienv), self.ground(f.right, penv, ienv))
        if isinstance(f, ForallI):
            return GUnion(tuple(self.ground(f.body, penv, {**ienv, f.var: d}) for d in self.domain),
                          tuple(f"{f.var}={d}" for d in self.domain))
        if isinstance(f, ForallP):
            fams = list(self.families(f.arity))
            return GUnion(tuple(self.ground(f.body, {**penv, f.var: fam}, ienv) for fam in fams),
                          tuple(f"{f.var}={_fam_str(fam)}" for fam in fams))
        if isinstance(f, (RArrow, RMaps)):
            args = tuple(self.value(t, ienv) for t in f.args)
            terms = self.relation(f.rel, args)
            body = self.ground(f.body, penv, ienv)
            if isinstance(f, RArrow):
                return GGuard(terms, body)
            return body if Atom("I") in terms else EMPTY
        if isinstance(f, EqMaps):
            same = self.value(f.left, ienv) == self.value(f.right, ienv)
            return self.ground(f.body, penv, ienv) if same else EMPTY
        raise UnsupportedFormula(f"cannot interpret {type(f).__name__}")

    def relation(self, name, args):
        rel = self.relations.get(name)
        if rel is None:
            raise UnsupportedFormula(f"no interpretation for relation {name}")
        return rel(args) if callable(rel) else rel[args]

    def value(self, t, ienv):
        if isinstance(t, IVar):
            if t.name not in ienv:
                raise UnsupportedFormula(f"free individual variable {t.name}")
            return ienv[t.name]
        if isinstance(t, IFn) and t.name == "0":
            return 0
        if isinstance(t, IFn) and t.name == "s":
            return self.value(t.args[0], ienv) + 1
        raise UnsupportedFormula(f"no interpretation for function {t.name}")


def _fam_str(fam):
    def sub(s):
        return "{" + ",".join(print_stack(x) for x in sorted(s, key=print_stack)) + "}"
    if list(fam) == [()]:
        return sub(fam[()])
    return "[" + ";".join(f"{k[0] if len(k) == 1 else k}:{sub(v)}" for k, v in fam.items()) + "]"


def close_universally(f):
    """Bind free predicate and individual variables of f."""
    from .logic import _pred_arity, free_ivars, free_pvars
    for name in sorted(free_ivars(f), reverse=True):
        f = ForallI(name, f)
    for name, plus in sorted(free_pvars(f), reverse=True):
        ar = _pred_arity(f, name)
        f = ForallP(name, ar or 0, f)
    return f


# ------------------------------------------------------------ verdicts

@dataclass
class Verdict:
    ok: bool
    trials: int
    witness: Optional[Process] = None
    path: str = ""
    censored: int = 0
    skipped: int = 0

    def __str__(self):
        if self.ok:
            s = f"no counterexample in {self.trials} trials"
        else:
            s = f"counterexample: {self.witness} [{self.path}]"
        if self.censored:
            s += f" (budget-censored runs: {self.censored})"
        return s


def _sample(u: Universe, g, rng, path):
    """A random element of ∥g∥, or None when it is empty."""
    if isinstance(g, GAtom):
        if not g.stacks:
            return None
        s = rng.choice(sorted(g.stacks, key=print_stack))
        path.append(f"π={print_stack(s)}")
        return s
    if isinstance(g, GImp):
        ts = u.real(g.left)
        if not ts:
            return None
        t = rng.choice(ts)
        path.append(f"arg={_short(t)}")
        s = _sample(u, g.right, rng, path)
        return None if s is None else s.push(t)
    if isinstance(g, GGuard):
        if not g.terms:
            return None
        t = rng.choice(sorted(g.terms, key=repr))
        path.append(f"rel={_short(t)}")
        s = _sample(u, g.body, rng, path)
        return None if s is None else s.push(t)
    order = list(range(len(g.branches)))
    rng.shuffle(order)
    for i in order:
        sub = []
        s = _sample(u, g.branches[i], rng, sub)
        if s is not None:
            if g.labels:
                path.append(g.labels[i])
            path.extend(sub)
            return s
    return None


def _short(t):
    from .terms import print_cterm
    s = print_cterm(t)
    return s if len(s) < 40 else s[:37] + "..."


def falsify(xi, f, u: Universe, trials=100, rng=None) -> Verdict:
    """Look for π ∈ ∥F∥ with ξ ⋆ π outside the pole."""
    if isinstance(f, str):
        f = parse_formula(f)
    g = f if isinstance(f, (GAtom, GImp, GGuard, GUnion)) else u.ground(close_universally(f))
    rng = rng or random.Random(u.seed)
    before = u.censored
    skipped = 0
    for i in range(trials):
        path = []
        s = _sample(u, g, rng, path)
        if s is None:
            skipped += 1
            continue
        p = Process(xi, s)
        if not u.in_pole(p):
            return Verdict(False, i + 1, p, ", ".join(path), u.censored - before, skipped)
    return Verdict(True, trials, censored=u.censored - before, skipped=skipped)


# ------------------------------------------------------------ the laws

def _term(src):
    return compile_term(parse_lterm(src))


PEIRCE = "((X -> Y) -> X) -> X"


def law_cases():
    """(name, realizer, formula) for the classical and guard laws."""
    return [
        ("peirce-cc", Atom("cc"), PEIRCE),
        ("guard-intro", _term(r"\x (x) I"), "(r(x) -> X) -> (r(x) |-> X)"),
        ("guard-elim", Atom("K"), "(r(x) |-> X) -> r(x) -> X"),
        ("eq-guard-intro", _term(r"\x (x) I"), "(x = y -> X) -> (x = y |-> X)"),
        ("eq-guard-elim", _term(r"\x \y (y) x"), "(x = y |-> X), x = y -> X"),
    ]


def _nullary_instances(u, names):
    subs = u.subsets()
    for vals in itertools.product(subs, repeat=len(names)):
        yield dict(zip(names, ({(): v} for v in vals)))


def check_continuation_law(u: Universe, trials=100, rng=None) -> Verdict:
    """k_π ⊩ X → Y for every π ∈ ∥X∥."""
    rng = rng or random.Random(u.seed)
    f = parse_formula("X -> Y")
    cases = []
    for penv in _nullary_instances(u, ["X", "Y"]):
        for pi in sorted(penv["X"][()], key=print_stack):
            cases.append((pi, penv))
    before = u.censored
    for i in range(trials):
        pi, penv = rng.choice(cases)
        v = falsify(Cont(pi), u.ground(f, penv), u, trials=1, rng=rng)
        if not v.ok:
            v.path = f"π={print_stack(pi)}, {v.path}"
            v.trials = i + 1
            return v
    return Verdict(True, trials, censored=u.censored - before)


def check_negation_law(u: Universe, part: str, trials=100, rng=None) -> Verdict:
    """N_A with |N_A| = {k_π : π ∈ ∥A∥}, A an atomic parameter.

    (i)  I ⊩ N_A → ¬A      (ii)  cc ⊩ (N_A → ⊥) → A
    """
    rng = rng or random.Random(u.seed)
    before = u.censored
    envs = list(_nullary_instances(u, ["A"]))
    for i in range(trials):
        penv = rng.choice(envs)
        a = u.ground(Pred("A"), penv)
        na = frozenset(Cont(s) for s in u.norm(a))
        bot = u.ground(parse_formula("bot"))
        if part == "i":
            xi, g = Atom("I"), GGuard(na, GImp(a, bot))
        else:
            xi, g = Atom("cc"), GImp(GGuard(na, bot), a)
        v = falsify(xi, g, u, trials=1, rng=rng)
        if not v.ok:
            v.trials = i + 1
            v.path = f"A={_fam_str(penv['A'])}, {v.path}"
            return v
    return Verdict(True, trials, censored=u.censored - before)


@dataclass
class LawReport:
    name: str
    universes: int
    trials: int
    failures: list
    censored: int

    @property
    def ok(self):
        return not self.failures

    def line(self):
        status = "ok" if self.ok else "COUNTEREXAMPLE"
        return (f"{self.name}\t{status}\tuniverses={self.universes}\ttrials={self.trials}"
                f"\tcensored={self.censored}")


def run_laws(universes=200, trials=100, seed=0, names=None, broken=False):
    """Falsify every law over seeded universes; returns LawReports by name."""
    cases = {n: (xi, parse_formula(f)) for n, xi, f in law_cases()}
    if broken:
        cases = {"peirce-broken-K": (Atom("K"), parse_formula(PEIRCE))}
    extra = [] if broken else ["neg-intro", "neg-elim", "continuation"]
    wanted = names or (list(cases) + extra)
    reports = {n: LawReport(n, 0, 0, [], 0) for n in wanted}
    for k in range(universes):
        useed = seed * 1_000_003 + k
        u = Universe.sample(useed)
        for n in wanted:
            rng = random.Random(f"{useed}:{n}")
            if n in cases:
                xi, f = cases[n]
                v = falsify(xi, f, u, trials, rng)
            elif n == "continuation":
                v = check_continuation_law(u, trials, rng)
            else:
                v = check_negation_law(u, "i" if n == "neg-intro" else "ii", trials, rng)
            r = reports[n]
            r.universes += 1
            r.trials += v.trials
            r.censored += v.censored
            if not v.ok:
                r.failures.append((useed, v))
    return reports


def check_saturation(u: Universe, n=1000, rng=None) -> int:
    """Count violations of: p in pole and p′ ≻ p imply p′ in pole."""
    rng = rng or random.Random(u.seed)
    bad = 0
    members = []
    for _ in range(n * 4):
        t = rng.choice(u.pool)
        s = rng.choice(small_stacks())
        p = Process(t, s.push(rng.choice(u.pool)))
        if u.in_pole(p):
            members.append(p)
        if len(members) >= n:
            break
    for p in members:
        preds = [Process(Atom("I"), p.stack.push(p.head))]
        if p.stack.items:
            preds.append(Process(App(p.head, p.stack.items[0]),
                                 Stack(p.stack.items[1:], p.stack.base)))
        preds.append(Process(Atom("K"), p.stack.push(p.head, Const("a"))))
        for q in preds:
            if not u.in_pole(q):
                bad += 1
    return bad
