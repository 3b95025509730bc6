"""The lifted algebra of (term, condition) pairs.

Pairs compose by ``(ξ,p)(η,q) = (ᾱ0 ξ η, p∧q)``.  A lifted process
``(ξ ⋆ π, p)`` is executed on the ordinary machine as ``ξ ⋆ π^τ`` where the
certificate constant τ stands for an element of C[p]; the condition carried
by τ is tracked symbolically by :mod:`realizab.wedge`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .arith import numeral, succ_term, zero
from .machine import Process, run
from .terms import (
    App, Atom, Const, Cont, Num, Stack, Var, app, compile_term, lam,
    print_cterm, print_stack,
)
from .wedge import (
    ONE, Certificate, CExpr, Wedge, apply_cexpr, cexpr, gamma_table, lift,
    parse_wedge, pretty_wedge, spine_term, synth,
)

CERT = Const("τ")


@dataclass(frozen=True)
class BTerm:
    term: object
    condition: object

    def __str__(self):
        return f"({print_cterm(self.term)}, {pretty_wedge(self.condition)})"


def alpha0_bar():
    return lift(cexpr("α0"))


def b_apply(f: BTerm, a: BTerm) -> BTerm:
    return BTerm(app(alpha0_bar(), f.term, a.term), Wedge(f.condition, a.condition))


# ------------------------------------------------------------ starred combinators

def _g(name):
    return gamma_table()[name]


def _gbar(name):
    return lift(_g(name))


def _kstar_source(k):
    """(χ)λxλy(k)(χ′y)(γk)x with k a continuation or a variable."""
    x, y = Var("x"), Var("y")
    return app(Atom("rd"), lam("x", "y", app(k, app(Atom("wr"), y, spine_term(_g("γk"), x)))))


def kstar(pi: Stack):
    """k*_π."""
    return compile_term(_kstar_source(Cont(pi)))


@lru_cache(maxsize=None)
def star_table() -> dict:
    a0 = alpha0_bar()
    x, y, z = Var("x"), Var("y"), Var("z")
    t = {}
    t["B"] = compile_term(lam("x", "y", "z",
                              app(_gbar("γB"), app(App(a0, x), app(a0, y, z)))))
    t["C"] = App(_gbar("γC"), Atom("C"))
    t["E"] = compile_term(lam("x", "y", app(_gbar("γE"), app(a0, x, y))))
    t["I"] = App(_gbar("γI"), Atom("I"))
    t["K"] = App(_gbar("γK"), Atom("K"))
    t["W"] = App(_gbar("γW"), Atom("W"))
    inner = app(Atom("wr"), y, spine_term(_g("γcc"), x))
    body = lam("x", "y", app(Atom("cc"), lam("k", app(inner, _kstar_source(Var("k"))))))
    t["cc"] = compile_term(app(Atom("rd"), body))
    return t


class TranslationError(ValueError):
    pass


def translate(t) -> BTerm:
    """t ↦ (t*, 1_t) for a closed term built from combinators."""
    if isinstance(t, Num):
        return translate(numeral(t.n))
    if isinstance(t, Atom):
        table = star_table()
        if t.name not in table:
            raise TranslationError(f"{t.name} is outside the lifted fragment")
        return BTerm(table[t.name], ONE)
    if isinstance(t, App):
        return b_apply(translate(t.fun), translate(t.arg))
    raise TranslationError(f"cannot translate {print_cterm(t)}")


def one_of(t):
    """1_t: the application tree of t with 1 at the leaves."""
    if isinstance(t, App):
        return Wedge(one_of(t.fun), one_of(t.arg))
    return ONE


# ------------------------------------------------------------ chain checks

@dataclass
class ChainReport:
    name: str
    ok: bool
    start: str
    stages: list = field(default_factory=list)  # (process text, condition text, ok)
    steps: int = 0
    message: str = ""

    def lines(self):
        yield f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({self.steps} steps)"
        yield f"  start  {self.start}"
        for proc_text, cond, ok in self.stages:
            yield f"  {'reach' if ok else 'MISS '}  {proc_text}   [{cond}]"
        if self.message:
            yield f"  {self.message}"


def _stack_with_cert(items, base, spine):
    return Stack(tuple(items) + (spine,), base)


def check_chain(name, start: Process, start_cond, stages, budget=100_000) -> ChainReport:
    """Run ``start`` (whose bottom item is τ) and check it passes each stage.

    ``stages`` is a list of (head, items, base, cexprs, expected condition):
    the stage's process is ``head ⋆ items·π^{γτ}`` where γτ applies the
    C-expressions in order, and the certificate for the start condition,
    pushed through the same C-expressions, must end at the expected one.
    """
    report = ChainReport(name, True, f"{_abbrev(str(start))}   [{pretty_wedge(start_cond)}]")
    p = start
    total = 0
    for head, items, base, gs, want in stages:
        spine = CERT
        c = Certificate(start_cond)
        try:
            for g in gs:
                spine = spine_term(g, spine)
                c = apply_cexpr(g, c)
            cond_ok = c.condition == want
            cond_txt = pretty_wedge(c.condition)
        except ValueError as e:
            cond_ok = False
            cond_txt = str(e)
        target = Process(head, _stack_with_cert(items, base, spine))
        final, tr = run(p, budget, keep=False, until=lambda r: r == target)
        total += tr.count
        hit = tr.status == "reached"
        ok = hit and cond_ok
        shown = _short_process(head, items, base, gs)
        if not cond_ok:
            cond_txt += f" (expected {pretty_wedge(want)})"
        report.stages.append((shown, cond_txt, ok))
        if not ok:
            report.ok = False
            if not hit:
                report.message = f"machine stopped ({tr.status}) at {_abbrev(str(final))}"
            break
        p = final
    report.steps = total
    return report


def _abbrev(s, n=160):
    return s if len(s) <= n else s[:n] + "…"


def _short_process(head, items, base, gs):
    names = "".join(f"({g})" for g in gs)
    its = "".join(f"{_abbrev(print_cterm(i), 40)}·" for i in items)
    return f"{_abbrev(print_cterm(head), 40)} ⋆ {its}{base}^{{{names}τ}}"


_X, _Y, _Z = Const("ξ"), Const("η"), Const("ζ")
BASE = "π0"


def lifted_rule_cases() -> dict:
    """name -> (start process, start condition, stages)."""
    st = star_table()
    W = parse_wedge
    a0 = alpha0_bar()
    A0 = cexpr("α0")
    pi = Stack((), BASE)
    cases = {}

    def start(head, *items, base=BASE):
        return Process(head, Stack(tuple(items) + (CERT,), base))

    cases["I"] = (start(st["I"], _X), W("1^(p^s)"),
                  [(_X, (), BASE, [_g("γI")], W("p^s"))])
    cases["K"] = (start(st["K"], _X, _Y), W("1^(p^(q^s))"),
                  [(_X, (), BASE, [_g("γK")], W("p^s"))])
    cases["E"] = (start(st["E"], _X, _Y), W("1^(p^(q^s))"),
                  [(app(a0, _X, _Y), (), BASE, [_g("γE")], W("(p^q)^s")),
                   (_X, (_Y,), BASE, [_g("γE"), A0], W("p^(q^s)"))])
    cases["W"] = (start(st["W"], _X, _Y), W("1^(p^(q^s))"),
                  [(_X, (_Y, _Y), BASE, [_g("γW")], W("p^(q^(q^s))"))])
    cases["C"] = (start(st["C"], _X, _Y, _Z), W("1^(p^(q^(r^s)))"),
                  [(_X, (_Z, _Y), BASE, [_g("γC")], W("p^(r^(q^s))"))])
    cases["B"] = (start(st["B"], _X, _Y, _Z), W("1^(p^(q^(r^s)))"),
                  [(App(App(a0, _X), app(a0, _Y, _Z)), (), BASE, [_g("γB")],
                    W("(p^(q^r))^s"))])
    cases["cc"] = (start(st["cc"], _X), W("1^(p^s)"),
                   [(_X, (kstar(pi),), BASE, [_g("γcc")], W("p^(s^s)"))])
    omega = "ω0"
    cases["k"] = (start(kstar(pi), _X, base=omega), W("s^(p^q)"),
                  [(_X, (), BASE, [_g("γk")], W("p^s"))])
    return cases


LIFTED_RULES = ("I", "K", "E", "W", "C", "B", "cc", "k")


def b_step_check(rule: str, budget=100_000) -> ChainReport:
    cases = lifted_rule_cases()
    if rule not in cases:
        raise KeyError(f"no lifted chain for {rule!r}; choose from {', '.join(LIFTED_RULES)}")
    s, c, stages = cases[rule]
    return check_chain(f"lifted-{rule}", s, c, stages, budget)


# ------------------------------------------------------------ integers of the lifted model

@lru_cache(maxsize=None)
def model_gammas() -> dict:
    one_sigma = one_of(succ_term())
    return {
        "S": synth("1^(p^(q^r))", "p^(q^r)", "γS"),
        "T": synth("1^(p^(q^r))", "q^(1^(p^(1^r)))", "γT"),
        "g0": synth("1^(1^q)", "(1^1)^q", "γ0"),
        "g": synth(Wedge(parse_wedge("p"), parse_wedge("q")),
                   Wedge(Wedge(one_sigma, parse_wedge("p")), parse_wedge("q")), "γ"),
        "weaken": synth("p^q", "1^q", "γw"),
    }


@lru_cache(maxsize=None)
def model_terms() -> dict:
    """S, T, J, g, j and the helpers U, β."""
    G = model_gammas()
    sigma, z = succ_term(), zero()
    f, x, k, g, y = (Var(n) for n in "fxkgy")
    S = compile_term(lam("f", "x", app(App(lift(G["S"]), f), App(sigma, x))))
    T = compile_term(lam("f", "x", app(App(lift(G["T"]), x), S, f, z)))
    gt = compile_term(lam("k", "x", App(lift(G["g0"]), app(k, lift(G["g"]), x))))
    beta = App(alpha0_bar(), translate(sigma).term)
    U = compile_term(lam("g", "y", App(g, App(beta, y))))
    j = compile_term(lam("k", "f", app(k, U, f, translate(z).term)))
    # j hands n̄* to its continuation, so I is supplied to land on n̄* itself
    J = compile_term(lam("x", App(App(gt, x), app(j, x, Atom("I")))))
    return {"S": S, "T": T, "J": J, "g": gt, "j": j, "U": U, "β": beta}


def check_g(n: int, budget=500_000) -> ChainReport:
    """g ⋆ n̄·ξ·π^τ reaches ξ ⋆ π^{(γ)^n(γ0)τ}, with certificate 1_n∧q."""
    G = model_gammas()
    t = model_terms()
    start = Process(t["g"], Stack((numeral(n), _X, CERT), BASE))
    want = Wedge(translate(numeral(n)).condition, parse_wedge("q"))
    gs = [G["g0"]] + [G["g"]] * n
    return check_chain(f"model-g n={n}", start, parse_wedge("1^(1^q)"),
                       [(_X, (), BASE, gs, want)], budget)


def check_j(n: int, budget=500_000) -> ChainReport:
    """j ⋆ n̄·ξ·π reaches ξ ⋆ n̄*·π with n̄* literally translate(n̄)."""
    t = model_terms()
    start = Process(t["j"], Stack((numeral(n), _X), BASE))
    target = Process(_X, Stack((translate(numeral(n)).term,), BASE))
    final, tr = run(start, budget, keep=False, until=lambda r: r == target)
    rep = ChainReport(f"model-j n={n}", tr.status == "reached", f"j ⋆ {n}·ξ·{BASE}", steps=tr.count)
    rep.stages.append((f"ξ ⋆ ({n})*·{BASE}", "no condition", rep.ok))
    if not rep.ok:
        rep.message = f"machine stopped ({tr.status})"
    return rep


def check_J(n: int, budget=500_000) -> ChainReport:
    """J ⋆ n̄·π^τ reaches n̄* ⋆ π^{(γ)^n(γ0)τ}."""
    G = model_gammas()
    t = model_terms()
    start = Process(t["J"], Stack((numeral(n), CERT), BASE))
    want = Wedge(translate(numeral(n)).condition, parse_wedge("q"))
    gs = [G["g0"]] + [G["g"]] * n
    return check_chain(f"model-J n={n}", start, parse_wedge("1^(1^q)"),
                       [(translate(numeral(n)).term, (), BASE, gs, want)], budget)


def check_S(n: int, budget=100_000) -> ChainReport:
    """(S,1) ⋆ (ψ,p)·(n̄,1)·(π,r) ≻ (ψ,p) ⋆ (n+1,1)·(π,r)."""
    G = model_gammas()
    t = model_terms()
    psi = Const("ψ")
    start = Process(t["S"], Stack((psi, numeral(n), CERT), BASE))
    return check_chain(f"model-S n={n}", start, parse_wedge("1^(p^(1^r))"),
                       [(psi, (numeral(n + 1),), BASE, [G["S"]], parse_wedge("p^(1^r)"))],
                       budget)


def check_T(budget=100_000) -> ChainReport:
    """(T,1) ⋆ (φ,p)·(ν,q)·(π,r) ≻ (ν,q) ⋆ (S,1)·(φ,p)·(0̄,1)·(π,r)."""
    G = model_gammas()
    t = model_terms()
    phi, nu = Const("φ"), Const("ν")
    start = Process(t["T"], Stack((phi, nu, CERT), BASE))
    return check_chain("model-T", start, parse_wedge("1^(p^(q^r))"),
                       [(nu, (t["S"], phi, zero()), BASE, [G["T"]],
                         parse_wedge("q^(1^(p^(1^r)))"))], budget)


def check_gamma_lift(budget=100_000) -> ChainReport:
    """γ̄ξ ⋆ π^τ with τ : p∧q reaches ξ ⋆ π^{γτ} with γτ : 1∧q."""
    g = model_gammas()["weaken"]
    start = Process(App(lift(g), _X), Stack((CERT,), BASE))
    return check_chain("gamma-lift", start, parse_wedge("p^q"),
                       [(_X, (), BASE, [g], parse_wedge("1^q"))], budget)


def check_alpha0_lift(budget=100_000) -> ChainReport:
    """ᾱ0ξη ⋆ π^τ with τ : (p∧q)∧r reaches ξ ⋆ η·π^{α0τ}, condition p∧(q∧r)."""
    start = Process(app(alpha0_bar(), _X, _Y), Stack((CERT,), BASE))
    return check_chain("alpha0-lift", start, parse_wedge("(p^q)^r"),
                       [(_X, (_Y,), BASE, [cexpr("α0")], parse_wedge("p^(q^r)"))], budget)
