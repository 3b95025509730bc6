"""A catalog of named realizers with replayable reduction claims.

Each entry keeps its λ-term source in the usual notation, the compiled
c-term, and a list of claims.  A claim runs a start process until it
matches a target; targets may contain ``?x`` wildcards, and a matched
subterm can be fed to a follow-up run.  Claims about conditions also
check that the C-expressions involved carry the stated condition to the
stated result.  Entries without a displayed reduction are only built
("constructed").

Sources are parsed with three kinds of names besides the bound variables:
``env`` terms substituted as they are, C-expression names whose
application ``(α)t`` expands to the primitive spine over ``t``, and slots
standing for realizers the construction takes as parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from . import arith
from .balgebra import CERT, check_g, check_J, check_j, check_S, check_T, model_terms, translate
from .machine import Process, run
from .terms import App, Atom, Const, Lam, Stack, Var, app, compile_term, is_closed, parse_lterm
from .wedge import lift, parse_wedge, spine_term, synth, witnesses

DEFAULT_BUDGET = 200_000


# ------------------------------------------------------------ building terms

def expand_spines(t, cexprs):
    """Rewrite (α)u into the primitive spine of α over u."""
    if isinstance(t, App):
        if isinstance(t.fun, Const) and t.fun.name in cexprs:
            return spine_term(cexprs[t.fun.name], expand_spines(t.arg, cexprs))
        return App(expand_spines(t.fun, cexprs), expand_spines(t.arg, cexprs))
    if isinstance(t, Lam):
        return Lam(t.var, expand_spines(t.body, cexprs))
    if isinstance(t, Const) and t.name in cexprs:
        raise ValueError(f"C-expression {t.name} must be applied")
    return t


def build(src, env=None, cexprs=None, slots=()):
    """Parse, expand C-expression spines and compile."""
    cexprs = cexprs or {}
    t = parse_lterm(src, env=env or {}, consts=set(cexprs) | set(slots))
    return compile_term(expand_spines(t, cexprs))


def cx(src, dst, name):
    return synth(src, dst, name)


# ------------------------------------------------------------ claims

@dataclass
class ClaimResult:
    label: str
    status: str          # pass | fail | censored | constructed | unverifiable
    steps: int = 0
    detail: str = ""

    @property
    def ok(self):
        return self.status in ("pass", "constructed", "unverifiable")


@dataclass
class Claim:
    label: str
    check: Callable[[int], ClaimResult]
    kind: str = "chain"  # chain | derived


def _match(pat, t, caps):
    if isinstance(pat, Var) and pat.name.startswith("?"):
        if pat.name in caps:
            return caps[pat.name] == t
        caps[pat.name] = t
        return True
    if isinstance(pat, App):
        return isinstance(t, App) and _match(pat.fun, t.fun, caps) and _match(pat.arg, t.arg, caps)
    return pat == t


def match_process(pat: Process, p: Process):
    """Captures dict when p matches the pattern, else None."""
    if pat.stack.base != p.stack.base or len(pat.stack.items) != len(p.stack.items):
        return None
    caps = {}
    if not _match(pat.head, p.head, caps):
        return None
    for a, b in zip(pat.stack.items, p.stack.items):
        if not _match(a, b, caps):
            return None
    return caps


def reach(start: Process, target: Process, budget: int):
    """Run until the target pattern matches: (captures or None, status, steps)."""
    found = {}

    def hit(q):
        caps = match_process(target, q)
        if caps is not None:
            found.update(caps)
            return True
        return False

    _, tr = run(start, budget, keep=False, until=hit)
    return (found if tr.status == "reached" else None), tr.status, tr.count


def P(head, *items, base="π0", bottom=None):
    items = tuple(items) + ((bottom,) if bottom is not None else ())
    return Process(head, Stack(items, base))


def _fail(label, status, steps, start, target):
    if status == "budget-exhausted":
        return ClaimResult(label, "censored", steps, "budget exhausted")
    return ClaimResult(label, "fail", steps,
                       f"{status}; expected to reach {_short(target)} from {_short(start)}")


def _short(p, n=200):
    s = str(p)
    return s if len(s) <= n else s[: n - 3] + "..."


def chain_claim(label, start, target, certs=(), then=None, kind="chain"):
    """start ≻* target; ``certs`` are (cexpr, from, to) to witness; ``then``
    maps captures to further (start, target) or (start, target, then) steps."""
    def check(budget):
        total = 0
        for g, a, b in certs:
            if not witnesses(g, parse_wedge(a), parse_wedge(b)):
                return ClaimResult(label, "fail", 0, f"{g} is not a witness of {a} ⇒ {b}")
        todo = [(start, target, then)]
        while todo:
            s, t, nxt = todo.pop(0)
            caps, status, steps = reach(s, t, budget)
            total += steps
            if caps is None:
                return _fail(label, status, total, s, t)
            for follow in (nxt(caps) if nxt else ()):
                todo.append(tuple(follow) + (None,) * (3 - len(follow)))
        return ClaimResult(label, "pass", total)
    return Claim(label, check, kind)


def bool_claim(label, fn, kind="derived"):
    """A claim computed by fn(budget) -> (ok, steps, detail)."""
    def check(budget):
        ok, steps, detail = fn(budget)
        return ClaimResult(label, "pass" if ok else "fail", steps, detail)
    return Claim(label, check, kind)


def report_claim(label, fn, kind="chain"):
    """Wrap a function returning a ChainReport."""
    def check(budget):
        r = fn()
        return ClaimResult(label, "pass" if r.ok else "fail", r.steps, r.message)
    return Claim(label, check, kind)


# ------------------------------------------------------------ entries

@dataclass
class CorpusEntry:
    name: str
    source: str
    term: object
    claims: list = field(default_factory=list)
    note: str = ""
    slots: tuple = ()

    @property
    def closed(self):
        return is_closed(self.term)


X, Y_, Z_, K_, K2 = (Const(n) for n in ("ξ", "η", "ζ", "κ", "κ′"))
TAU = CERT
W0 = Var("?w")


def _consts(*names):
    return [Const(n) for n in names]


@lru_cache(maxsize=None)
def _base_env():
    T, S = arith.storage_pair()
    Y, A = arith.fixpoint_parts()
    return {"σ": arith.succ_term(), "zero": arith.zero(), "T": T, "S": S,
            "Y": Y, "A": A}


def _direct(name):
    """λn (f n) I: the catalog function used in direct style."""
    return compile_term(app(Lam("n", app(arith.arith_term(name), Var("n"), Atom("I")))))


def _n(k):
    return arith.numeral(k)


# -- individual builders; each returns a CorpusEntry

def _numerals():
    env = _base_env()
    zero = CorpusEntry("zero", r"\x \y y", env["zero"], note="numeral 0")
    zero.claims.append(chain_claim("0 ⋆ ξ·η ≻ η", P(env["zero"], X, Y_), P(Y_)))
    succ = CorpusEntry("successor", arith.SIGMA_SRC, env["σ"])
    for k in range(6):
        succ.claims.append(chain_claim(
            f"σ ⋆ {k}·ξ·η ≻ ξ ⋆ ({k})ξη",
            P(env["σ"], _n(k), X, Y_), P(X, app(_n(k), X, Y_))))
    iterate = CorpusEntry("numeral-iteration", "(σ)^n 0", _n(3), note="n = 3 shown")
    for k in range(16):
        iterate.claims.append(chain_claim(
            f"{k + 1} ⋆ φ·ω ≻ φ ⋆ ({k})φω",
            P(_n(k + 1), X, Y_), P(X, app(_n(k), X, Y_))))
    return [zero, succ, iterate]


def _fixpoint():
    env = _base_env()
    Y, A = env["Y"], env["A"]
    ea = CorpusEntry("fixpoint-half", arith.A_SRC, A)
    ey = CorpusEntry("fixpoint", "(A) A", Y)
    ey.claims.append(chain_claim("Y ⋆ κ ≻ κ ⋆ Yκ", P(Y, K_), P(K_, App(Y, K_))))
    return [ea, ey]


def _storage():
    env = _base_env()
    T, S = env["T"], env["S"]
    es = CorpusEntry("storage-step", arith.S_SRC, S)
    et = CorpusEntry("storage", arith.T_SRC, T)
    nu = Const("ν")
    et.claims.append(chain_claim("T ⋆ φ·ν ≻ ν ⋆ S·φ·0", P(T, X, nu), P(nu, S, X, _n(0))))
    for k in range(16):
        es.claims.append(chain_claim(f"S ⋆ ψ·{k} ≻ ψ ⋆ {k + 1}",
                                     P(S, X, _n(k)), P(X, _n(k + 1))))
        et.claims.append(chain_claim(f"T ⋆ φ·{k} ≻ φ ⋆ {k}",
                                     P(T, X, _n(k)), P(X, _n(k)), kind="derived"))
    return [es, et]


def _model_integers():
    terms = model_terms()
    out = []
    for key, label in (("g", "model-numeral-g"), ("j", "model-numeral-j"),
                       ("J", "model-numeral-J"), ("S", "model-step-S"), ("T", "model-storage-T")):
        out.append(CorpusEntry(label, f"see {label}", terms[key]))
    g, j, J, S, T = out
    for n in range(7):
        g.claims.append(report_claim(f"g chain n={n}", lambda n=n: check_g(n)))
        j.claims.append(report_claim(f"j output n={n}", lambda n=n: check_j(n)))
        J.claims.append(report_claim(f"J chain n={n}", lambda n=n: check_J(n)))
        S.claims.append(report_claim(f"S chain n={n}", lambda n=n: check_S(n)))
    T.claims.append(report_claim("T chain", check_T))
    return out


def _set_transfer():
    src = r"\f \u \m \h (u m) \n \x (h n)(f) x"
    t = build(src)
    e = CorpusEntry("membership-transfer", src, t)
    f, u, m, h = _consts("f", "u", "m", "h")
    e.claims.append(chain_claim(
        "θ ⋆ f·u·m·h ≻ u ⋆ m·?k", P(t, f, u, m, h), P(u, m, Var("?k")),
        then=lambda c: [(P(c["?k"], Const("n"), Const("x")),
                         P(h, Const("n"), app(f, Const("x"))))]))
    return [e]


def _generic():
    a0 = synth("(p^q)^r", "p^(q^r)", "α0")
    a0bar = lift(a0)
    out = []

    # (i): ᾱ ⋆ ξ·π^τ ≻ ξ ⋆ π^{ατ}
    al = cx("1^(p^q)", "p^1", "α")
    abar = lift(al)
    e = CorpusEntry("generic-not-one", r"abar", abar)
    e.claims.append(chain_claim(
        "(ᾱ⋆ξ·π, 1∧(p∧q)) ≻ (ξ⋆π, p∧1)", P(abar, X, bottom=TAU),
        P(X, bottom=spine_term(al, TAU)), certs=[(al, "1^(p^q)", "p^1")]))
    out.append(e)

    # (ii)
    cs = {"α": cx("1^(p^q)", "q", "α"), "β": cx("1^(p^q)", "p^(1^1)", "β")}
    src = r"\x (χ) \y ((χ′ x)(β) y)(α) y"
    t = build(src, cexprs=cs)
    e = CorpusEntry("generic-outside", src, t)
    e.claims.append(chain_claim(
        "θ ⋆ η·π^τ ≻ χ′ ⋆ η·βτ·ατ·π", P(t, Y_, bottom=TAU),
        P(Atom("wr"), Y_, spine_term(cs["β"], TAU), spine_term(cs["α"], TAU)),
        certs=[(cs["α"], "1^(p^q)", "q"), (cs["β"], "1^(p^q)", "p^(1^1)")]))
    out.append(e)

    # (iii)
    al = cx("1^(p′^(q′^q))", "q′^((q^p′)^1)", "α")
    be = cx("(q^p′)^p", "p′^(p^q)", "β")
    env = {"abar": lift(al), "bbar": lift(be)}
    src = r"\x \y (abar)(y)(bbar) x"
    t = build(src, env)
    e = CorpusEntry("generic-split", src, t)
    e.claims.append(chain_claim(
        "θ ⋆ ξ·η·π^τ ≻ η ⋆ ?b·π^{ατ}", P(t, X, Y_, bottom=TAU),
        P(Y_, Var("?b"), bottom=spine_term(al, TAU)),
        certs=[(al, "1^(p′^(q′^q))", "q′^((q^p′)^1)"), (be, "(q^p′)^p", "p′^(p^q)")],
        then=lambda c, be=be: [(P(c["?b"], base="ϖ0", bottom=TAU),
                                P(X, base="ϖ0", bottom=spine_term(be, TAU)))]))
    out.append(e)

    # (iv), with the condition r∧(1∧q) as the target of γ
    be = cx("p^q", "q^p", "β")
    ga = cx("1^(r^(q^r′))", "r^(1^q)", "γ")
    src = r"\x \y (gbar)(x) \z (χ′ y)(β) z"
    t = build(src, {"gbar": lift(ga)}, {"β": be})
    e = CorpusEntry("generic-dense-below", src, t)
    e.claims.append(chain_claim(
        "θ ⋆ η·ξ·π^τ ≻ η ⋆ ?z·π^{γτ}", P(t, Y_, X, bottom=TAU),
        P(Y_, Var("?z"), bottom=spine_term(ga, TAU)),
        certs=[(ga, "1^(r^(q^r′))", "r^(1^q)"), (be, "p^q", "q^p")],
        then=lambda c: [(P(c["?z"], Const("υ"), base="ρ0"),
                         P(Atom("wr"), X, spine_term(be, Const("υ")), base="ρ0"))]))
    out.append(e)

    # (v), as used in its own verification: the last C-expression is α′
    cs = {"α": cx("1^(p′^(r^q))", "(r^1)^(1^1)", "α"),
          "α′": cx("1^(p′^(r^q))", "q^p′", "α′"),
          "β": cx("p^q", "q^p", "β")}
    src = r"\x \y (χ) \z (((χ′)(a0bar y) \z′ (χ′ x)(β) z′)(α) z)(α′) z"
    t = build(src, {"a0bar": a0bar}, cs)
    e = CorpusEntry("generic-downward", src, t)
    e.claims.append(chain_claim(
        "θ ⋆ ξ·η·π^τ ≻ χ′ ⋆ ?a·ατ·α′τ·π", P(t, X, Y_, bottom=TAU),
        P(Atom("wr"), Var("?a"), spine_term(cs["α"], TAU), spine_term(cs["α′"], TAU)),
        certs=[(cs["α"], "1^(p′^(r^q))", "(r^1)^(1^1)"),
               (cs["α′"], "1^(p′^(r^q))", "q^p′"), (cs["β"], "p^q", "q^p")],
        then=lambda c: [(
            P(c["?a"], base="ρ0", bottom=Const("υ")),
            P(Y_, Var("?l"), base="ρ0", bottom=spine_term(a0, Const("υ"))),
            lambda c2: [(P(c2["?l"], Const("υ′"), base="ρ1"),
                         P(Atom("wr"), X, spine_term(cs["β"], Const("υ′")), base="ρ1"))])]))
    out.append(e)
    return out


def _density():
    al = cx("q^r", "q^(q^r)", "α")
    be = cx("1^(p^(q^r))", "p^(1^q)", "β")
    vsrc = r"(χ) \d \x \y (χ′ x)(α) y"
    vt = build(vsrc, cexprs={"α": al})
    src = r"(bbar) \x \y (x)(vt) y"
    t = build(src, {"bbar": lift(be), "vt": vt})
    e = CorpusEntry("density", src, t)
    tau2 = Const("τ′")
    e.claims.append(chain_claim(
        "θ ⋆ ξ·η·π^{τ0} ≻ ξ ⋆ ϑη·π^{βτ0}", P(t, X, Y_, bottom=TAU),
        P(X, Var("?v"), bottom=spine_term(be, TAU)),
        certs=[(be, "1^(p^(q^r))", "p^(1^q)"), (al, "q^r", "q^(q^r)")],
        then=lambda c: [(P(c["?v"], Const("υ"), base="ϖ0", bottom=tau2),
                         P(Y_, base="ϖ0", bottom=spine_term(al, Const("υ"))))]))
    ev = CorpusEntry("density-inner", vsrc, vt)
    ev.claims.append(chain_claim(
        "ϑ ⋆ η·τ·ϖ^{τ′} ≻ η ⋆ ϖ^{ατ}", P(vt, Y_, Const("υ"), base="ϖ0", bottom=tau2),
        P(Y_, base="ϖ0", bottom=spine_term(al, Const("υ")))))
    return [e, ev]


def _representation():
    src = r"\x (x) zero zero"
    t = build(src, _base_env())
    e = CorpusEntry("representation", src, t)
    e.claims.append(chain_claim("θ ⋆ ξ ≻ ξ ⋆ 0·0", P(t, X), P(X, _n(0), _n(0))))
    return [e]


def _choice_chain():
    """The countable-chain constructions, with dse built on the refinement entry."""
    out = []
    env = dict(_base_env())
    al = cx("(p^q)^r", "r^q", "α")
    be = cx("(p^q)^r", "p^r", "β")
    bsrc = r"\x \y (x)(β) y"
    bprime = build(bsrc, cexprs={"β": be})
    e = CorpusEntry("refinement", bsrc, bprime)
    e.claims.append(chain_claim(
        "β′ ⋆ ξ·τ ≻ ξ ⋆ βτ", P(bprime, X, TAU), P(X, spine_term(be, TAU)),
        certs=[(be, "(p^q)^r", "p^r")]))
    out.append(e)

    dsrc = r"\a (\h (a I I) \x \y h) \z (cc) \k ((\x x z) bprime) \x \y (k)(y)(α) x"
    dse = build(dsrc, {"bprime": bprime}, {"α": al})
    e = CorpusEntry("choice-witness", dsrc, dse, note="dse")
    e.claims.append(chain_claim(
        "dse ⋆ ξ ≻ ξ ⋆ I·I·?h", P(dse, X), P(X, Atom("I"), Atom("I"), Var("?h"))))
    out.append(e)

    ysrc = r"\x (Y) \y \z (x) z y"
    yprime = build(ysrc, env)
    e = CorpusEntry("fixpoint-swap", ysrc, yprime)
    e.claims.append(chain_claim(
        "Y′ ⋆ ξ·η ≻ ξ ⋆ η·?f", P(yprime, X, Y_), P(X, Y_, Var("?f")),
        then=lambda c: [(P(c["?f"], Const("υ")), P(X, Const("υ"), c["?f"]))]))
    out.append(e)

    d0src = r"\x (dse)(ς)(yprime) x"
    dse0 = build(d0src, {"dse": dse, "yprime": yprime})
    out.append(CorpusEntry("least-witness", d0src, dse0, note="dse0"))

    cp = arith.arith_term("cp")
    ecp = CorpusEntry("comparator", "catalog cp", cp)
    names = _consts("ξ", "η", "ζ")
    for m in range(9):
        for n in range(9):
            want = names[arith.cp_branch(m, n)]
            ecp.claims.append(chain_claim(f"cp {m} {n}", P(cp, _n(m), _n(n), *names), P(want)))
    out.append(ecp)

    usrc = (r"\k \k′ \x \y1 \y2 \y3 \x′ \y1′ \y2′ \y3′ "
            r"((cp k′ k)(x) k′ y1′ y2′ y3′)(x′) k y1 y2 y3")
    dse1 = build(usrc, {"cp": cp})
    e = CorpusEntry("witness-unique", usrc, dse1, note="ȳ of length 3")
    ys = _consts("y1", "y2", "y3")
    ys2 = _consts("z1", "z2", "z3")
    xx, xx2 = Const("x"), Const("x′")
    for k in range(4):
        for k2 in range(4):
            start = P(dse1, _n(k), _n(k2), xx, *ys, xx2, *ys2, Z_)
            if k2 < k:
                target = P(xx, _n(k2), *ys2)
            elif k < k2:
                target = P(xx2, _n(k), *ys)
            else:
                target = P(Z_)
            e.claims.append(chain_claim(f"k={k} k′={k2}", start, target, kind="derived"))
    out.append(e)

    rsrc = r"\k \x \y1 \y2 \y3 \x′ \z \u (z k x y1 y2 y3)(x′) z u"
    rec = build(rsrc)
    e = CorpusEntry("sequence-step", rsrc, rec)
    kk, z, u = Const("k"), Const("z"), Const("u")
    e.claims.append(chain_claim(
        "rec ⋆ k·ξ·ȳ·ξ′·ζ·v ≻ ζ ⋆ k·ξ·ȳ·?r", P(rec, kk, xx, *ys, xx2, z, u),
        P(z, kk, xx, *ys, Var("?r")),
        then=lambda c: [(P(c["?r"]), P(xx2, z, u))]))
    out.append(e)

    out.append(CorpusEntry("sequence-start", r"\x \y y", build(r"\x \y y")))
    out.append(CorpusEntry("sequence-start-unique", r"\x (x) I I", build(r"\x (x) I I")))

    csrc = r"\x \y (dse0) \l \z1 \z2 \z3 \z4 (y)(rec) l z1 z2 z3 z4 x"
    cd1 = build(csrc, {"dse0": dse0, "rec": rec})
    out.append(CorpusEntry("sequence-extend", csrc, cd1, note="cd1, z⃗ of length 4"))
    ssrc = r"\n ((n) \x \y (x) \z (cd1) z y) \x (x) \x \y y"
    ccd1 = build(ssrc, {"cd1": cd1})
    e = CorpusEntry("sequence-exists", ssrc, ccd1, note="ccd1")
    e.claims.append(chain_claim("ccd1 ⋆ 0·ξ ≻ ξ ⋆ λxλy y", P(ccd1, _n(0), X),
                                P(X, build(r"\x \y y"))))
    out.append(e)

    c4src = r"\a \b \c ((b \x0 \x1 \x2 \x3 \x \y (x)(x1) y) \x x a) c"
    ccd4 = build(c4src)
    e = CorpusEntry("chain-nontrivial", c4src, ccd4, note="ccd4")
    e.claims.append(chain_claim(
        "ccd4 ⋆ τ·ξ·η ≻ ξ ⋆ ?f·?g·η", P(ccd4, TAU, X, Y_), P(X, Var("?f"), Var("?g"), Y_),
        then=lambda c: [(P(c["?g"], Const("υ")), P(Const("υ"), TAU))]))
    out.append(e)

    lsrc = r"\x \y \z (cc) \k ((y) \u (k)(x) u) z"
    lef0 = build(lsrc)
    out.append(CorpusEntry("forcing-descends", lsrc, lef0, note="lef0"))
    l1src = r"\x \y \z \u (lef0)(cc) \h ((y) \v (h)(x) v u) z"
    lef1 = build(l1src, {"lef0": lef0})
    out.append(CorpusEntry("forcing-descends-pm", l1src, lef1, note="lef1"))

    out.append(CorpusEntry("decide-0", r"\a \b \x (b)(ccd4) x",
                           build(r"\a \b \x (b)(ccd4) x", {"ccd4": ccd4})))
    out.append(CorpusEntry("decide-1", r"\a \b (a) \x \y y", build(r"\a \b (a) \x \y y")))
    d2src = r"\a \b \n (cc) \k ((ccd1)(σ) n) \x (k)((lef1)(for) n x)(a) n x"
    out.append(CorpusEntry("decide-2", d2src,
                           build(d2src, {**env, "ccd1": ccd1, "lef1": lef1}, slots=("for",)),
                           note="for is a slot", slots=("for",)))

    c2 = {"α": cx("p", "p^p", "α"), "β": cx("p^q", "(p^q)^q", "β"),
          "α′": cx("(p^r)^q", "r^1", "α′"), "β′": cx("(p^r)^q", "p^q", "β′"),
          "α2": cx("(p^r)^1", "p^r", "α″")}
    crl2src = (r"\x0 \y0 \z0 \u ((\y \z ((y0) \x (x0 y z)(β) x)(α) u) "
               r"\d \x \y ((x)(α′) y)(β′) y) \n \x \y (z0 n x)(α2) y")
    crl2 = build(crl2src, cexprs=c2)
    out.append(CorpusEntry("representation-step", crl2src, crl2, note="crl2"))
    crl1src = r"\x \y \z \u \v ((x)(crl2) u y z)(δ) v"
    crl1 = build(crl1src, {"crl2": crl2}, {"δ": cx("1^p", "p", "δ")})
    out.append(CorpusEntry("representation-chain", crl1src, crl1, note="crl1"))
    return out


def _well_order():
    out = []
    tsrc = r"\f \g \i \x \h (f i x) \j \y (g j y) h"
    t = build(tsrc)
    e = CorpusEntry("inclusion-transitive", tsrc, t)
    f, g, h, x, y, u = _consts("f", "g", "h", "x", "y", "u")
    i = _n(2)
    e.claims.append(chain_claim(
        "θ ⋆ f·g·i·x·h ≻ f ⋆ i·x·?k", P(t, f, g, i, x, h), P(f, i, x, Var("?k")),
        then=lambda c: [(P(c["?k"], Const("j"), y), P(g, Const("j"), y, h))]))
    out.append(e)

    env = {"e": arith.arith_term("e"), "d0": _direct("d0"), "d2": _direct("d2")}
    t2src = r"\f \i \y \u ((e i)(u i) y)((f (d2 i)) y) \j (u)(d0) j"
    t2 = build(t2src, env)
    e = CorpusEntry("inclusion-meet", t2src, t2)
    for k in range(9):
        start = P(t2, f, _n(k), y, u)
        if k % 2:
            e.claims.append(chain_claim(f"i={k} odd", start, P(u, _n(k), y), kind="derived"))
        else:
            e.claims.append(chain_claim(
                f"i={k} even", start, P(f, Var("?h"), y, Var("?k")), kind="derived",
                then=lambda c, k=k: [(P(c["?h"], X, Y_), P(_n(k // 2), X, Y_))]))
    out.append(e)

    t3src = (r"\f \g \i \i′ \x \x′ \u \v \w (f i′ x′) \j′ \y′ (f i x) \j \y "
             r"(g) j j′ y y′ u v w")
    t3 = build(t3src)
    e = CorpusEntry("inclusion-nontrivial", t3src, t3)
    i1, i2, x1, x2, v, w = _consts("i", "i′", "x", "x′", "v", "w")
    e.claims.append(chain_claim(
        "θ ⋆ f·g·i·i′·x·x′·u·v·w ≻ f ⋆ i′·x′·?k", P(t3, f, g, i1, i2, x1, x2, u, v, w),
        P(f, i2, x2, Var("?k"))))
    out.append(e)

    env = {"e4": arith.arith_term("e4"), "d0": _direct("d0"),
           "σ": arith.succ_term(), "p": _direct("pred")}
    t4src = r"\i \y \u (((e4 i)(u (d0 i)) y)((u (σ (σ i))) y))((u (p (p (p i)))) y)"
    t4 = build(t4src, env)
    e = CorpusEntry("meet-associative", t4src, t4, note="branch on e4")
    for k in range(13):
        start = P(t4, _n(k), y, u)
        b = arith.e4_branch(k)
        target = P(u, Var("?j"), y)
        want = (2 * k, k + 2, k - 3)[b]
        if want < 0:
            continue
        e.claims.append(chain_claim(
            f"i={k} branch {b}", start, target,
            then=lambda c, want=want: [(P(c["?j"], X, Y_), P(_n(want), X, Y_))]))
    out.append(e)

    lsrc = r"\i \x \y ((y)(σ) i) x"
    t5 = build(lsrc, {"σ": arith.succ_term()})
    e = CorpusEntry("inclusion-successor", lsrc, t5)
    for k in range(11):
        e.claims.append(chain_claim(f"i={k}", P(t5, _n(k), X, Y_), P(Y_, _n(k + 1), X)))
    out.append(e)
    return out


# ------------------------------------------------------------ extraction

class OpenTermError(ValueError):
    pass


def build_extraction(u, theta_au, theta_rpn, delta_prime_g, xi0, eta0):
    """ζ = δ′_G v ξ0 η0 with v = ((ᾱ0)(ᾱ0)u*θ)θ′."""
    for name, t in (("u", u), ("θ", theta_au), ("θ′", theta_rpn),
                    ("δ′_G", delta_prime_g), ("ξ0", xi0), ("η0", eta0)):
        if not is_closed(t):
            raise OpenTermError(f"{name} is not closed")
    a0 = lift(synth("(p^q)^r", "p^(q^r)", "α0"))
    ustar = translate(u).term
    v = app(a0, app(a0, ustar, theta_au), theta_rpn)
    return app(delta_prime_g, v, xi0, eta0)


def _extraction():
    from .logic import parse_formula, synth_delta
    u = build(r"\x \y \z \a \b a")
    g = parse_formula("bot -> forall x (s(0) eps x -> 0 eps x -> s(0) eps x)")
    dprime = synth_delta(g)[1]
    zeta = build_extraction(u, Atom("I"), Atom("I"), dprime, Const("τ0"), Atom("I"))
    e = CorpusEntry("extraction", "δ′_G v ξ0 η0", zeta,
                    note="stub axioms; G = ⊥ → ∀x(1 ε x, 0 ε x → 1 ε x)")

    def check(budget):
        caps, status, steps = reach(P(zeta, K_, K2), P(K_), budget)
        if caps is not None:
            return ClaimResult("ζ ⋆ κ·κ′ ≻ κ", "pass", steps)
        return ClaimResult("ζ ⋆ κ·κ′ ≻ κ", "unverifiable", steps,
                           f"stub realizers do not reach κ ⋆ π ({status})")
    e.claims.append(Claim("ζ ⋆ κ·κ′ ≻ κ", check, "derived"))
    return [e]


# ------------------------------------------------------------ catalog & replay

@lru_cache(maxsize=None)
def catalog() -> dict:
    entries = []
    for part in (_numerals, _fixpoint, _storage, _model_integers, _set_transfer,
                 _generic, _density, _representation, _choice_chain, _well_order,
                 _extraction):
        entries.extend(part())
    out = {}
    for e in entries:
        if e.name in out:
            raise AssertionError(f"duplicate corpus entry {e.name}")
        out[e.name] = e
    return out


# the usual short names of the realizers
ALIASES = {
    "0": "zero", "σ": "successor", "sigma": "successor", "A": "fixpoint-half", "Y": "fixpoint",
    "S": "storage-step", "T": "storage", "T-storage": "storage",
    "g": "model-numeral-g", "j": "model-numeral-j", "J": "model-numeral-J",
    "β′": "refinement", "dse": "choice-witness", "Y′": "fixpoint-swap",
    "dse0": "least-witness", "cp": "comparator", "dse1": "witness-unique",
    "rec": "sequence-step", "cd1": "sequence-extend", "ccd1": "sequence-exists",
    "ccd4": "chain-nontrivial", "lef0": "forcing-descends", "lef1": "forcing-descends-pm",
    "dec0": "decide-0", "dec1": "decide-1", "dec2": "decide-2",
    "crl1": "representation-chain", "crl2": "representation-step", "ζ": "extraction",
}


def resolve(name) -> str:
    if name in catalog():
        return name
    if name in ALIASES:
        return ALIASES[name]
    raise KeyError(f"unknown corpus entry {name!r}")


def replay(name, budget=DEFAULT_BUDGET) -> list:
    e = catalog()[resolve(name)]
    if not e.closed:
        return [ClaimResult("closed", "fail", 0, "term has free variables")]
    if not e.claims:
        return [ClaimResult("construction", "constructed", 0)]
    return [c.check(budget) for c in e.claims]


def report(names=None, budget=DEFAULT_BUDGET) -> list:
    """One tab-separated line per claim, in catalog order."""
    lines = []
    for name in names or list(catalog()):
        for r in replay(name, budget):
            line = f"{name}\t{r.label}\t{r.status}\tsteps={r.steps}"
            if r.detail and not r.ok:
                line += f"\t{r.detail}"
            lines.append(line)
    return lines
