"""Acceptance suite: one test per criterion, each recording a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v``; the summary at the end of
the session lists every criterion.
"""

import time

from gen import random_cterm, random_lterm, rng_for

from realizab import arith, balgebra, corpus, logic, pole, wedge
from realizab.machine import Process, StackCodec, run, step
from realizab.terms import (
    App, Atom, Const, Cont, Num, Stack, compile_term, lam, lsubst, spine,
    substitute, substitute_many,
)
from realizab.wedge import ONE, Wedge, WVar, parse_wedge

X, Y, Z, W_ = (Const(n) for n in ("ξ", "η", "ζ", "ω"))


def P(head, *items, base="π0"):
    return Process(head, Stack(tuple(items), base))


# ------------------------------------------------------------ 1

def test_criterion_01_machine_rules(record):
    t0 = time.perf_counter()
    pi = Stack((Const("a"),), "π0")
    rest = (Const("a"),)
    codec = StackCodec()
    cases = [
        ("push", P(App(X, Y), *rest), P(X, Y, *rest)),
        ("I", P(Atom("I"), X, *rest), P(X, *rest)),
        ("K", P(Atom("K"), X, Y, *rest), P(X, *rest)),
        ("E", P(Atom("E"), X, Y, *rest), P(App(X, Y), *rest)),
        ("W", P(Atom("W"), X, Y, *rest), P(X, Y, Y, *rest)),
        ("C", P(Atom("C"), X, Y, Z, *rest), P(X, Z, Y, *rest)),
        ("B", P(Atom("B"), X, Y, Z, *rest), P(App(X, App(Y, Z)), *rest)),
        ("cc", P(Atom("cc"), X, *rest), P(X, Cont(pi), *rest)),
        ("k", Process(Cont(pi), Stack((X, Y), "ϖ0")), P(X, *rest)),
        ("qt", P(Atom("qt"), X, *rest), P(X, Num(0), *rest)),
        ("rd", P(Atom("rd"), X, Y, W_), P(X, W_, Y)),
        ("wr", P(Atom("wr"), X, W_, Y), P(X, Y, W_)),
        ("num", P(Num(1), X), P(App(arith.succ_term(), Num(0)), X)),
    ]
    bad = []
    for name, start, want in cases:
        got = step(start, codec)
        if got != (name, want):
            bad.append(name)
    # ς numbers stacks injectively: a second stack gets the next code
    other = step(P(Atom("qt"), X, Y), codec)
    if other != ("qt", P(X, Num(1), Y)) or codec.decode(0) != pi:
        bad.append("qt-codec")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    record(1, ok, f"12 rules and numeral expansion, failures={bad}, {dt:.3f}s")
    assert ok


# ------------------------------------------------------------ 2

def test_criterion_02_abstraction_reaches_substitution(record):
    t0 = time.perf_counter()
    rng = rng_for("abstraction")
    names = ["x", "y", "z"]
    consts = [Const(n) for n in ("a", "b", "c")]
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 3)
        xs = names[:n]
        t = random_cterm(rng, rng.randint(0, 6), xs)
        start = P(compile_term(lam(*xs, t)), *consts[:n])
        head, args = spine(substitute_many(t, dict(zip(xs, consts))))
        target = P(head, *args)
        _, tr = run(start, 100_000, keep=False, until=lambda q: q == target)
        failures += tr.status != "reached"
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 30
    record(2, ok, f"1000 terms, failures={failures}, {dt:.2f}s")
    assert ok


# ------------------------------------------------------------ 3

def test_criterion_03_compile_commutes_with_substitution(record):
    rng = rng_for("substitution")
    failures = 0
    for _ in range(1000):
        p = random_lterm(rng, 6, ["x", "a"])
        q = random_lterm(rng, 4, ["a", "b"])
        lhs = compile_term(lsubst(p, "x", q))
        rhs = substitute(compile_term(p), "x", compile_term(q))
        failures += lhs != rhs
    record(3, failures == 0, f"1000 triples, failures={failures}")
    assert failures == 0


# ------------------------------------------------------------ 4

def test_criterion_04_fixpoint_and_storage(record):
    Yc, A = arith.fixpoint_parts()
    T, S = arith.storage_pair()
    kappa, phi, nu = Const("κ"), Const("φ"), Const("ν")
    bad = []
    # Y ⋆ κ·π ≻ A ⋆ A·κ·π ≻ κ ⋆ Yκ·π, exact states along the way
    _, tr = run(P(Yc, kappa), 1000)
    states = [p for _, p in tr.steps]
    if P(A, A, kappa) not in states or states[-1] != P(kappa, App(Yc, kappa)):
        bad.append("Y")
    _, tr = run(P(T, phi, nu), 1000)
    if tr.steps[-1][1] != P(nu, S, phi, arith.numeral(0)):
        bad.append("T⋆φ·ν")
    for n in range(16):
        _, tr = run(P(S, phi, arith.numeral(n)), 1000)
        if tr.steps[-1][1] != P(phi, arith.numeral(n + 1)):
            bad.append(f"S{n}")
        _, tr = run(P(T, phi, arith.numeral(n)), 100_000)
        if tr.steps[-1][1] != P(phi, arith.numeral(n)):
            bad.append(f"T{n}")
    record(4, not bad, f"Y, T, S chains for n ≤ 15, failures={bad}")
    assert not bad


# ------------------------------------------------------------ 5

def test_criterion_05_arithmetic_catalog(record):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for name in arith.catalog_names():
        if arith.oracle(name) is None:
            continue
        if arith.arity(name) == 1:
            args = [(m,) for m in range(21)]
        else:
            args = [(m, n) for m in range(9) for n in range(9)]
        for a in args:
            checked += 1
            if not arith.check_function(name, *a, budget=2_000_000):
                bad.append((name, a))
    for i in range(21):
        checked += 1
        if not arith.check_branch("e", i):
            bad.append(("e", i))
    for i in range(9):
        checked += 1
        if not arith.check_branch("e4", i):
            bad.append(("e4", i))
    for m in range(9):
        for n in range(9):
            checked += 1
            if not arith.check_branch("cp", m, n):
                bad.append(("cp", m, n))
    dt = time.perf_counter() - t0
    record(5, not bad, f"{checked} runs, failures={bad[:5]}, {dt:.1f}s")
    assert not bad


# ------------------------------------------------------------ 6

# chains printed for the five derived expressions, step by step
DERIVED_CHAINS = {
    "β′0": ["p^q", "(p^q)^(p^q)", "p^(q^(p^q))", "q^(p^q)", "(p^q)^q"],
    "β′2": ["p^(q^r)", "(q^r)^p", "q^(r^p)", "(r^p)^q", "r^(p^q)", "(p^q)^r"],
    "β′1": ["(p^q)^r", "r^(p^q)", "(r^(p^q))^(p^q)", "((r^(p^q))^p)^q",
            "q^((r^(p^q))^p)", "(r^(p^q))^p", "r^((p^q)^p)", "((p^q)^p)^r",
            "(p^(q^p))^r", "p^((q^p)^r)", "(q^p)^r"],
    "β3": ["p^(q^r)", "(q^r)^p", "(r^q)^p", "p^(r^q)"],
    "β′3": ["(p^(q^r))^s", "((q^r)^p)^s", "(q^r)^(p^s)", "(r^q)^(p^s)",
            "((r^q)^p)^s", "(p^(r^q))^s"],
}

GAMMA_TARGETS = {
    "γ0": ("p^(q^r)", "(p^q)^r"),
    "γI": ("p^q", "q"),
    "γK": ("1^(p^(q^r))", "p^r"),
    "γE": ("1^(p^(q^r))", "(p^q)^r"),
    "γW": ("1^(p^(q^r))", "p^(q^(q^r))"),
    "γC": ("1^(p^(q^(r^s)))", "p^(r^(q^s))"),
    "γB": ("1^(p^(q^(r^s)))", "(p^(q^r))^s"),
    "γcc": ("1^(p^q)", "p^(q^q)"),
    "γk": ("p^(q^r)", "q^p"),
}


def random_wedge(rng, depth, names):
    if depth == 0 or rng.random() < 0.3:
        return ONE if rng.random() < 0.15 else WVar(rng.choice(names))
    return Wedge(random_wedge(rng, depth - 1, names), random_wedge(rng, depth - 1, names))


def test_criterion_06_cexpression_calculus(record):
    bad = []
    table = wedge.derived_table()
    for name, chain_text in DERIVED_CHAINS.items():
        want = [parse_wedge(c) for c in chain_text]
        if wedge.chain(table[name], want[0]) != want:
            bad.append(name)
    gammas = wedge.gamma_table()
    for name, (a, b) in GAMMA_TARGETS.items():
        if not wedge.witnesses(gammas[name], parse_wedge(a), parse_wedge(b)):
            bad.append(name)
    rng = rng_for("synthesis")
    failures = 0
    for _ in range(1000):
        t = random_wedge(rng, rng.randint(0, 4), ["p", "q", "r", "s"])
        names = sorted(wedge.wvars(t)) or ["p"]
        u = random_wedge(rng, rng.randint(0, 3), names)
        if not wedge.wvars(t):
            u = ONE if rng.random() < 0.5 else Wedge(ONE, ONE)
        g = wedge.synth(t, u)
        failures += not wedge.witnesses(g, t, u)
    ok = not bad and failures == 0
    record(6, ok, f"5 derived chains, 9 γ's, 1000 syntheses; failures={bad}, {failures}")
    assert ok


# ------------------------------------------------------------ 7

LIFTED_TARGETS = {
    "I": ["p^s"], "K": ["p^s"], "W": ["p^(q^(q^s))"], "C": ["p^(r^(q^s))"],
    "B": ["(p^(q^r))^s"], "cc": ["p^(s^s)"], "k": ["p^s"],
    "E": ["(p^q)^s", "p^(q^s)"],
}


def test_criterion_07_lifted_algebra_chains(record):
    bad = []
    cases = balgebra.lifted_rule_cases()
    for rule, targets in LIFTED_TARGETS.items():
        _, _, stages = cases[rule]
        if [s[4] for s in stages] != [parse_wedge(t) for t in targets]:
            bad.append(f"{rule}-target")
        if not balgebra.b_step_check(rule).ok:
            bad.append(rule)
    for n in range(7):
        if not balgebra.check_g(n).ok:
            bad.append(f"g{n}")
        if not balgebra.check_j(n).ok:
            bad.append(f"j{n}")
    record(7, not bad, f"8 lifted rules, g/j for n ≤ 6; failures={bad}")
    assert not bad


# ------------------------------------------------------------ 8

FORCING_GOLDEN = [
    ("p", "X(x)", "∀q(C[p∧q] → X⁺(q, x))"),
    ("p", "A -> B", "∀q(∀q1(C[q∧q1] → A⁺(q1)) → ∀q1(C[(p∧q)∧q1] → B⁺(q1)))"),
    ("p", "r(x) -> A", "r(x) → ∀q(C[p∧q] → A⁺(q))"),
    ("p", "r(x) |-> A", "r(x) ↦ ∀q(C[p∧q] → A⁺(q))"),
    ("p", "x = y |-> A", "x = y ↦ ∀q(C[p∧q] → A⁺(q))"),
    ("p", "C[q0] -> A", "C[q0] → ∀q(C[p∧q] → A⁺(q))"),
    ("p", "bot", "∀X⁺ ∀q(C[p∧q] → X⁺(q))"),
    ("p", "forall p X(p)", "∀p1 ∀q(C[p∧q] → X⁺(q, p1))"),
    ("p", "forall x X(x)", "∀x ∀q(C[p∧q] → X⁺(q, x))"),
    ("p", "forall2 X/1 X(x)", "∀X⁺ ∀q(C[p∧q] → X⁺(q, x))"),
    ("p", "x eps y", "C[p∧1] → x ε y"),
    ("p", "top", "⊤"),
    ("q", "n eps p", "C[q∧1] → n ε p"),
]

EXAMPLE_FORMULA = "forall2 X(forall x(forall y(f(x, y) = 0 |-> X(y)) -> X(x)) -> forall x X(x))"


def _shaped(rng, ps, k):
    """A random formula with propositional structure ``ps``."""
    if ps == logic.O:
        r = rng.random()
        if r < 0.4:
            return logic.Pred(f"X{k}", (logic.IVar("x"),))
        if r < 0.7:
            return logic.Eps(logic.IVar("x"), logic.IVar(f"y{k}"))
        return logic.ForallI("x", logic.Pred(f"Z{k}", (logic.IVar("x"),)))
    body = _shaped(rng, ps.right, k + 1)
    if ps.left == logic.O and rng.random() < 0.4:
        return logic.RArrow(f"r{k}", (logic.IVar("x"),), body)
    return logic.Imp(_shaped(rng, ps.left, k + 1), body)


def _random_ps(rng, depth):
    if depth == 0 or rng.random() < 0.35:
        return logic.O
    return logic.PArrow(_random_ps(rng, depth - 1), _random_ps(rng, depth - 1))


def test_criterion_08_forcing_transform(record):
    bad = []
    for p, f, want in FORCING_GOLDEN:
        got = logic.print_formula(logic.force(p, logic.parse_formula(f)))
        if got != want:
            bad.append(f)
    ex = logic.parse_formula(EXAMPLE_FORMULA)
    if logic.print_ps(logic.prop_structure(ex)) != "(O→O)→O":
        bad.append("structure")
    rng = rng_for("chi")
    pairs = 0
    while pairs < 50:
        ps = _random_ps(rng, 3)
        f1, f2 = _shaped(rng, ps, 0), _shaped(rng, ps, 0)
        if f1 == f2:
            continue
        pairs += 1
        rebuilt = logic._chi_for.__wrapped__(ps)
        if not (logic.synth_chi(f1) == logic.synth_chi(f2) == rebuilt):
            bad.append(f"chi-{pairs}")
    record(8, not bad, f"{len(FORCING_GOLDEN)} golden transforms, example structure, "
                       f"50 χ pairs; failures={bad}")
    assert not bad


# ------------------------------------------------------------ 9

def test_criterion_09_pole_falsification(record):
    t0 = time.perf_counter()
    reports = pole.run_laws(universes=200, trials=100, seed=0)
    broken = pole.run_laws(universes=200, trials=100, seed=0, broken=True)
    dt = time.perf_counter() - t0
    failing = [n for n, r in reports.items() if not r.ok]
    detected = all(not r.ok for r in broken.values())
    censored = sum(r.censored for r in reports.values())
    ok = not failing and detected and dt < 300
    record(9, ok, f"{len(reports)} laws x 200 universes x 100 trials, failing={failing}, "
                  f"broken variant detected={detected}, censored={censored}, {dt:.0f}s")
    assert ok


# ------------------------------------------------------------ 10

CHAIN_ENTRIES = ["generic-not-one", "density", "comparator", "meet-associative",
                "inclusion-successor", "least-witness", "sequence-exists", "fixpoint",
                "storage", "storage-step"]


def test_criterion_10_corpus(record):
    cat = corpus.catalog()
    open_entries = [n for n, e in cat.items() if not e.closed]
    lines = corpus.report()
    failed = [l for l in lines if l.split("\t")[2] not in ("pass", "constructed", "unverifiable")]
    covered = [n for n in CHAIN_ENTRIES if n in cat]
    again = corpus.report()
    ok = (not open_entries and not failed and len(covered) == len(CHAIN_ENTRIES)
          and lines == again and len(cat) >= 30)
    record(10, ok, f"{len(cat)} entries, {len(lines)} claim lines, open={open_entries}, "
                   f"failed={len(failed)}, deterministic={lines == again}")
    assert ok


# ------------------------------------------------------------ 11

def test_criterion_11_natural_deduction(record):
    ex = logic.example_derivations()
    wrong = []
    accepted = rejected = 0
    for name, (d, ctx, should) in ex.items():
        try:
            j = logic.nd_check(d, ctx)
            accepted += 1
            if not should:
                wrong.append(name)
        except logic.NDError:
            rejected += 1
            if should:
                wrong.append(name)
    targets = {
        "weakening": "A → B → A",
        "composition": "(A → B) → (B → C) → A → C",
        "peirce": "∀X ∀Y(((X → Y) → X) → X)",
    }
    for name, want in targets.items():
        d, ctx, _ = ex[name]
        if logic.print_formula(logic.nd_check(d, ctx).conclusion) != want:
            wrong.append(f"{name}-conclusion")
    ok = not wrong and rejected >= 5
    record(11, ok, f"accepted={accepted}, rejected={rejected}, wrong={wrong}")
    assert ok
