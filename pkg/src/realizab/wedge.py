"""Wedge conditions, C-expressions and their synthesis.

A C-expression is a sequence of parts written (δ0)(δ1)...(δk); applied to a
condition it applies δk first.  Parts are either one of the six primitive
transformers or a nested (possibly named) C-expression.  Primitives rewrite
at the root only, and a symbolic checker replays an expression on a
certificate, so ``γ :: t ⇒ u`` is decidable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union


@dataclass(frozen=True, slots=True)
class WVar:
    name: str


@dataclass(frozen=True, slots=True)
class One:
    pass


@dataclass(frozen=True, slots=True)
class Wedge:
    left: object
    right: object


ONE = One()


def w(*parts):
    """Right-nested wedge: w(a, b, c) = a ∧ (b ∧ c).  Strings become variables."""
    parts = [WVar(p) if isinstance(p, str) else p for p in parts]
    t = parts[-1]
    for p in reversed(parts[:-1]):
        t = Wedge(p, t)
    return t


def wvars(t) -> frozenset:
    if isinstance(t, WVar):
        return frozenset((t.name,))
    if isinstance(t, Wedge):
        return wvars(t.left) | wvars(t.right)
    return frozenset()


def wsize(t) -> int:
    if isinstance(t, Wedge):
        return 1 + wsize(t.left) + wsize(t.right)
    return 1


def print_wedge(t) -> str:
    if isinstance(t, WVar):
        return t.name
    if isinstance(t, One):
        return "1"
    return f"({print_wedge(t.left)}^{print_wedge(t.right)})"


def pretty_wedge(t, top=True) -> str:
    if isinstance(t, WVar):
        return t.name
    if isinstance(t, One):
        return "1"
    s = f"{pretty_wedge(t.left, False)}∧{pretty_wedge(t.right, False)}"
    return s if top else f"({s})"


_WTOK = re.compile(r"\s*([()^∧]|1|[^\W\d][\w′']*)")


def parse_wedge(text: str):
    """Parse ``w ::= ident | 1 | ( w ^ w )``; ∧ is accepted for ^ and the
    outer parentheses may be omitted."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _WTOK.match(text, pos)
        if not m:
            raise ValueError(f"bad wedge syntax at position {pos}: {text!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def atom():
        nonlocal i
        if i >= len(toks):
            raise ValueError(f"unexpected end of wedge term: {text!r}")
        tok = toks[i]
        i += 1
        if tok == "(":
            t = expr()
            if i >= len(toks) or toks[i] != ")":
                raise ValueError(f"missing ')' in {text!r}")
            i += 1
            return t
        if tok == "1":
            return ONE
        if tok in (")", "^", "∧"):
            raise ValueError(f"unexpected {tok!r} in {text!r}")
        return WVar(tok)

    def expr():
        nonlocal i
        left = atom()
        if i < len(toks) and toks[i] in ("^", "∧"):
            i += 1
            return Wedge(left, expr())
        return left

    t = expr()
    if i != len(toks):
        raise ValueError(f"trailing input in wedge term {text!r}")
    return t


# ------------------------------------------------------------ primitives

def _pv(n):
    return WVar("?" + n)


P, Q, R, S = (_pv(n) for n in "pqrs")

PRIMITIVES = {
    "α0": (Wedge(Wedge(P, Q), R), Wedge(P, Wedge(Q, R))),
    "α1": (P, Wedge(P, ONE)),
    "α2": (Wedge(P, Q), Q),
    "β0": (P, Wedge(P, P)),
    "β1": (Wedge(P, Q), Wedge(Q, P)),
    "β2": (Wedge(Wedge(Wedge(P, Q), R), S), Wedge(Wedge(P, Wedge(Q, R)), S)),
}

ASCII_PRIM = {"a0": "α0", "a1": "α1", "a2": "α2", "b0": "β0", "b1": "β1", "b2": "β2"}


def _match(pat, t, env):
    if isinstance(pat, WVar) and pat.name.startswith("?"):
        if pat.name in env:
            return env[pat.name] == t
        env[pat.name] = t
        return True
    if isinstance(pat, Wedge):
        return isinstance(t, Wedge) and _match(pat.left, t.left, env) and _match(pat.right, t.right, env)
    return pat == t


def _inst(tpl, env):
    if isinstance(tpl, WVar) and tpl.name.startswith("?"):
        return env[tpl.name]
    if isinstance(tpl, Wedge):
        return Wedge(_inst(tpl.left, env), _inst(tpl.right, env))
    return tpl


class MatchFailure(ValueError):
    def __init__(self, prim, cond):
        super().__init__(f"{prim} does not apply to {pretty_wedge(cond)}")
        self.prim = prim
        self.cond = cond


def apply_prim(name: str, t):
    pat, tpl = PRIMITIVES[name]
    env = {}
    if not _match(pat, t, env):
        raise MatchFailure(name, t)
    return _inst(tpl, env)


# ------------------------------------------------------------ C-expressions

@dataclass(frozen=True)
class CExpr:
    parts: tuple = ()
    name: Optional[str] = None

    def flat(self) -> tuple:
        """Primitive names, leftmost first (the last one is applied first)."""
        out = []
        for p in self.parts:
            out.extend((p,) if isinstance(p, str) else p.flat())
        return tuple(out)

    def __str__(self):
        if self.name:
            return self.name
        return "".join(f"({p})" for p in self.parts) or "()"

    def expanded(self) -> str:
        return "".join(f"({p})" for p in self.flat()) or "()"

    def __len__(self):
        return len(self.flat())


def cexpr(*parts, name=None) -> CExpr:
    """Build a C-expression; parts are primitive names or CExprs."""
    parts = tuple(ASCII_PRIM.get(p, p) if isinstance(p, str) else p for p in parts)
    for p in parts:
        if isinstance(p, str) and p not in PRIMITIVES:
            raise KeyError(f"unknown primitive {p!r}")
    return CExpr(parts, name)


def named(name, expr: CExpr) -> CExpr:
    return CExpr(expr.parts, name)


@dataclass(frozen=True)
class Certificate:
    """Symbolic claim "τ ∈ C[condition]" with the primitives applied so far."""
    condition: object
    applied: tuple = ()

    def replay(self, start):
        t = start
        for prim in self.applied:
            t = apply_prim(prim, t)
        return t


def cert(t) -> Certificate:
    if isinstance(t, str):
        t = parse_wedge(t)
    return Certificate(t)


def apply_cexpr(g: CExpr, c: Certificate) -> Certificate:
    cond = c.condition
    prov = list(c.applied)
    for prim in reversed(g.flat()):
        cond = apply_prim(prim, cond)
        prov.append(prim)
    return Certificate(cond, tuple(prov))


def chain(g: CExpr, t) -> list:
    """Conditions after each top-level part of g, starting with t."""
    out = [t]
    for p in reversed(g.parts):
        sub = CExpr((p,)) if isinstance(p, str) else p
        t = apply_cexpr(sub, Certificate(t)).condition
        out.append(t)
    return out


def witnesses(g: CExpr, t, u) -> bool:
    try:
        return apply_cexpr(g, Certificate(t)).condition == u
    except MatchFailure:
        return False


# ------------------------------------------------------------ derived table

@lru_cache(maxsize=None)
def derived_table() -> dict:
    b0p = cexpr("β1", "α2", "α0", "β0", name="β′0")
    b2p = cexpr("β1", "α0", "β1", "α0", "β1", name="β′2")
    b1p = cexpr("α2", "α0", "β2", "β1", "α0", "α2", "β1", b2p, b0p, "β1", name="β′1")
    b3 = cexpr("β1", b1p, "β1", name="β3")
    b3p = cexpr(b1p, b2p, b1p, "α0", b1p, name="β′3")
    return {"β′0": b0p, "β′1": b1p, "β′2": b2p, "β3": b3, "β′3": b3p}


def _d(name):
    return derived_table()[name]


# ------------------------------------------------------------ synthesis

def _last_occurrence_side(t, p):
    """Where the last occurrence of p sits in t = u ∧ v: 'left' or 'right'."""
    return "right" if p in wvars(t.right) else "left"


def synth_var(t, p: str) -> CExpr:
    """γ :: t ⇒ t∧p for a variable p occurring in t."""
    if p not in wvars(t):
        raise ValueError(f"variable {p} does not occur in {pretty_wedge(t)}")
    if t == WVar(p):
        return cexpr("β0")
    if t.right == WVar(p):
        return _d("β′0")
    u, v = t.left, t.right
    if p not in wvars(v):
        inner = synth_var(Wedge(v, u), p)
        return cexpr(_d("β′1"), inner, "β1")
    v0, v1 = v.left, v.right
    if p not in wvars(v1):
        inner = synth_var(Wedge(u, Wedge(v1, v0)), p)
        return cexpr(_d("β′3"), inner, _d("β3"))
    inner = synth_var(Wedge(Wedge(u, v0), v1), p)
    return cexpr("β2", inner, _d("β′2"))


def synth_extend(t, u) -> CExpr:
    """γ :: t ⇒ t∧u, requiring vars(u) ⊆ vars(t)."""
    missing = wvars(u) - wvars(t)
    if missing:
        raise ValueError(f"variables {sorted(missing)} of the target are missing from the source")
    if isinstance(u, One):
        return cexpr("α1")
    if isinstance(u, WVar):
        return synth_var(t, u.name)
    g1 = synth_extend(t, u.left)
    g2 = synth_extend(Wedge(t, u.left), u.right)
    return cexpr("α0", g2, g1)


def synth_project(t, u) -> CExpr:
    """γ :: t ⇒ u."""
    return cexpr("α2", synth_extend(t, u))


def synth(t, u, name=None) -> CExpr:
    """synth_project from text or terms, verified before returning."""
    if isinstance(t, str):
        t = parse_wedge(t)
    if isinstance(u, str):
        u = parse_wedge(u)
    g = synth_project(t, u)
    assert witnesses(g, t, u)
    return named(name, g) if name else g


# ------------------------------------------------------------ gamma table

GAMMA_SPECS = {
    "γI": ("p^q", "q"),
    "γK": ("1^(p^(q^r))", "p^r"),
    "γE": ("1^(p^(q^r))", "(p^q)^r"),
    "γW": ("1^(p^(q^r))", "p^(q^(q^r))"),
    "γC": ("1^(p^(q^(r^s)))", "p^(r^(q^s))"),
    "γB": ("1^(p^(q^(r^s)))", "(p^(q^r))^s"),
    "γcc": ("1^(p^q)", "p^(q^q)"),
    "γk": ("p^(q^r)", "q^p"),
    "γ0": ("p^(q^r)", "(p^q)^r"),
}


@lru_cache(maxsize=None)
def gamma_table() -> dict:
    return {name: synth(a, b, name) for name, (a, b) in GAMMA_SPECS.items()}


def spec_of(name):
    a, b = GAMMA_SPECS[name]
    return parse_wedge(a), parse_wedge(b)


# ------------------------------------------------------------ lifting

def prim_const(name):
    from .terms import Const
    return Const(name)


def spine_term(g: CExpr, tau):
    """The application (δ0)(δ1)...(δk)τ with primitives as opaque constants."""
    from .terms import App
    t = tau
    for prim in reversed(g.flat()):
        t = App(prim_const(prim), t)
    return t


def lift_source(g: CExpr):
    """λx(χ)λy(χ′x)(γ)y as a lambda-term."""
    from .terms import Atom, Var, app, lam
    return lam("x", app(Atom("rd"), lam("y", app(Atom("wr"), Var("x"), spine_term(g, Var("y"))))))


_lift_cache: dict = {}


def lift(g: CExpr):
    """γ̄, compiled."""
    from .terms import compile_term
    key = g.flat()
    if key not in _lift_cache:
        _lift_cache[key] = compile_term(lift_source(g))
    return _lift_cache[key]


def alpha0_bar():
    return lift(cexpr("α0"))
