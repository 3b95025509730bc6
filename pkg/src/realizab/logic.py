"""Second-order formulas, the forcing transform and natural deduction.

The core connectives are →, ∀x and ∀X, together with relation guards
``R(t) → F``, ``R(t) ↦ F``, ``t = u ↦ F``, ⊤ and the membership atom
``t ε u``.  ⊥, ¬, ∨, ∧, ∃ and ``x = y`` are expanded when parsed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .terms import App, Atom, Var, app, compile_term, lam
from .wedge import cexpr, gamma_table, lift, spine_term, synth


# ------------------------------------------------------------ individual terms

@dataclass(frozen=True, slots=True)
class IVar:
    name: str


@dataclass(frozen=True, slots=True)
class IFn:
    """Function symbol application; ``0``, ``1``, ``s`` and ``∧`` are the
    distinguished symbols."""
    name: str
    args: tuple = ()


ONE_T = IFn("1")
ZERO_T = IFn("0")


def iwedge(a, b):
    return IFn("∧", (a, b))


def isucc(a):
    return IFn("s", (a,))


def inum(n: int):
    t = ZERO_T
    for _ in range(n):
        t = isucc(t)
    return t


def iterm_vars(t) -> frozenset:
    if isinstance(t, IVar):
        return frozenset((t.name,))
    return frozenset().union(*(iterm_vars(a) for a in t.args)) if t.args else frozenset()


def isubst(t, x, u):
    if isinstance(t, IVar):
        return u if t.name == x else t
    return IFn(t.name, tuple(isubst(a, x, u) for a in t.args))


def print_iterm(t, top=True, meet="∧") -> str:
    if isinstance(t, IVar):
        return t.name
    if t.name == "∧":
        s = f"{print_iterm(t.args[0], False, meet)}{meet}{print_iterm(t.args[1], False, meet)}"
        return s if top else f"({s})"
    if not t.args:
        return t.name
    return f"{t.name}({', '.join(print_iterm(a, True, meet) for a in t.args)})"


# ------------------------------------------------------------ formulas

@dataclass(frozen=True, slots=True)
class Pred:
    """X(t1,…,tk); ``plus`` marks the forcing companion X⁺."""
    name: str
    args: tuple = ()
    plus: bool = False


@dataclass(frozen=True, slots=True)
class Imp:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class ForallI:
    var: str
    body: object


@dataclass(frozen=True, slots=True)
class ForallP:
    var: str
    arity: int
    body: object
    plus: bool = False


@dataclass(frozen=True, slots=True)
class RArrow:
    rel: str
    args: tuple
    body: object


@dataclass(frozen=True, slots=True)
class RMaps:
    rel: str
    args: tuple
    body: object


@dataclass(frozen=True, slots=True)
class EqMaps:
    left: object
    right: object
    body: object


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class CondGuard:
    """C[t] → F."""
    cond: object
    body: object


@dataclass(frozen=True, slots=True)
class Eps:
    """t ε u."""
    elem: object
    set: object


TOP = Top()
BOT = ForallP("X", 0, Pred("X"))

Formula = Union[Pred, Imp, ForallI, ForallP, RArrow, RMaps, EqMaps, Top, CondGuard, Eps]


def is_bottom(f) -> bool:
    return (isinstance(f, ForallP) and f.arity == 0 and not f.plus
            and f.body == Pred(f.var))


def neg(a):
    return Imp(a, BOT)


def imps(*fs):
    """imps(A1, …, An, B) = A1, …, An → B."""
    *hyps, b = fs
    for h in reversed(hyps):
        b = Imp(h, b)
    return b


def exists(var, body, second_order=False, arity=0, hyps=None):
    fs = hyps if hyps is not None else [body]
    inner = imps(*fs, BOT)
    q = ForallP(var, arity, inner) if second_order else ForallI(var, inner)
    return Imp(q, BOT)


def disj(a, b):
    return imps(neg(a), neg(b), BOT)


def conj(a, b):
    return Imp(imps(a, b, BOT), BOT)


def equality(t, u, zname=None):
    """x = y as ∀Z(Zx → Zy)."""
    z = zname or "Z"
    return ForallP(z, 1, Imp(Pred(z, (t,)), Pred(z, (u,))))


# ------------------------------------------------------------ free variables

def free_ivars(f) -> frozenset:
    if isinstance(f, Pred):
        return frozenset().union(*(iterm_vars(a) for a in f.args)) if f.args else frozenset()
    if isinstance(f, Imp):
        return free_ivars(f.left) | free_ivars(f.right)
    if isinstance(f, ForallI):
        return free_ivars(f.body) - {f.var}
    if isinstance(f, ForallP):
        return free_ivars(f.body)
    if isinstance(f, (RArrow, RMaps)):
        vs = frozenset().union(*(iterm_vars(a) for a in f.args)) if f.args else frozenset()
        return vs | free_ivars(f.body)
    if isinstance(f, EqMaps):
        return iterm_vars(f.left) | iterm_vars(f.right) | free_ivars(f.body)
    if isinstance(f, CondGuard):
        return iterm_vars(f.cond) | free_ivars(f.body)
    if isinstance(f, Eps):
        return iterm_vars(f.elem) | iterm_vars(f.set)
    return frozenset()


def free_pvars(f) -> frozenset:
    """Free predicate variables, as (name, plus) pairs."""
    if isinstance(f, Pred):
        return frozenset(((f.name, f.plus),))
    if isinstance(f, ForallP):
        return free_pvars(f.body) - {(f.var, f.plus)}
    if isinstance(f, Imp):
        return free_pvars(f.left) | free_pvars(f.right)
    if isinstance(f, (ForallI, RArrow, RMaps, EqMaps, CondGuard)):
        return free_pvars(f.body)
    return frozenset()


def all_names(f) -> frozenset:
    """Every variable name occurring anywhere, bound or free."""
    out = set()

    def walk(g):
        if isinstance(g, Pred):
            out.add(g.name)
            for a in g.args:
                out.update(iterm_vars(a))
        elif isinstance(g, Imp):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, ForallI):
            out.add(g.var)
            walk(g.body)
        elif isinstance(g, ForallP):
            out.add(g.var)
            walk(g.body)
        elif isinstance(g, (RArrow, RMaps)):
            for a in g.args:
                out.update(iterm_vars(a))
            walk(g.body)
        elif isinstance(g, EqMaps):
            out.update(iterm_vars(g.left) | iterm_vars(g.right))
            walk(g.body)
        elif isinstance(g, CondGuard):
            out.update(iterm_vars(g.cond))
            walk(g.body)
        elif isinstance(g, Eps):
            out.update(iterm_vars(g.elem) | iterm_vars(g.set))
    walk(f)
    return frozenset(out)


def fresh(base: str, avoid) -> str:
    if base not in avoid:
        return base
    for i in itertools.count(1):
        c = f"{base}{i}"
        if c not in avoid:
            return c


# ------------------------------------------------------------ substitution

def subst_ind(f, x: str, t):
    """F[t/x], renaming bound individual variables to avoid capture."""
    tv = iterm_vars(t)

    def go(g):
        if isinstance(g, Pred):
            return Pred(g.name, tuple(isubst(a, x, t) for a in g.args), g.plus)
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        if isinstance(g, ForallI):
            if g.var == x:
                return g
            if g.var in tv and x in free_ivars(g.body):
                nv = fresh(g.var, tv | all_names(g.body) | {x})
                return ForallI(nv, go(subst_ind(g.body, g.var, IVar(nv))))
            return ForallI(g.var, go(g.body))
        if isinstance(g, ForallP):
            return ForallP(g.var, g.arity, go(g.body), g.plus)
        if isinstance(g, RArrow):
            return RArrow(g.rel, tuple(isubst(a, x, t) for a in g.args), go(g.body))
        if isinstance(g, RMaps):
            return RMaps(g.rel, tuple(isubst(a, x, t) for a in g.args), go(g.body))
        if isinstance(g, EqMaps):
            return EqMaps(isubst(g.left, x, t), isubst(g.right, x, t), go(g.body))
        if isinstance(g, CondGuard):
            return CondGuard(isubst(g.cond, x, t), go(g.body))
        if isinstance(g, Eps):
            return Eps(isubst(g.elem, x, t), isubst(g.set, x, t))
        return g
    return go(f)


class ArityError(ValueError):
    pass


def subst_pred(a, X: str, k: int, F, ys=()):
    """A[F/X y1…yk]: replace each X(t1…tk) by F[t/y]."""
    ys = tuple(ys)
    if len(ys) != k:
        raise ArityError(f"{X} has arity {k} but {len(ys)} variables were given")
    f_ifree = free_ivars(F) - set(ys)
    f_pfree = {n for n, _ in free_pvars(F)}

    def inst(args):
        if len(args) != k:
            raise ArityError(f"{X} used with {len(args)} arguments, expected {k}")
        # simultaneous substitution through fresh intermediates
        avoid = all_names(F) | set().union(*(iterm_vars(t) for t in args))
        tmp = []
        g = F
        for y in ys:
            z = fresh("_" + y, avoid)
            avoid = avoid | {z}
            tmp.append(z)
            g = subst_ind(g, y, IVar(z))
        for z, t in zip(tmp, args):
            g = subst_ind(g, z, t)
        return g

    def go(g):
        if isinstance(g, Pred):
            if g.name == X and not g.plus:
                return inst(g.args)
            return g
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        if isinstance(g, ForallI):
            if g.var in f_ifree:
                nv = fresh(g.var, f_ifree | all_names(g.body))
                return ForallI(nv, go(subst_ind(g.body, g.var, IVar(nv))))
            return ForallI(g.var, go(g.body))
        if isinstance(g, ForallP):
            if g.var == X and not g.plus:
                return g
            if g.var in f_pfree:
                nv = fresh(g.var, f_pfree | all_names(g.body) | {X})
                body = rename_pred(g.body, g.var, nv, g.plus)
                return ForallP(nv, g.arity, go(body), g.plus)
            return ForallP(g.var, g.arity, go(g.body), g.plus)
        if isinstance(g, (RArrow, RMaps)):
            return type(g)(g.rel, g.args, go(g.body))
        if isinstance(g, EqMaps):
            return EqMaps(g.left, g.right, go(g.body))
        if isinstance(g, CondGuard):
            return CondGuard(g.cond, go(g.body))
        return g
    return go(a)


def rename_pred(f, old: str, new: str, plus=False):
    """Rename free occurrences of the predicate variable ``old``."""
    def go(g):
        if isinstance(g, Pred):
            return Pred(new, g.args, g.plus) if (g.name == old and g.plus == plus) else g
        if isinstance(g, ForallP):
            if g.var == old and g.plus == plus:
                return g
            return ForallP(g.var, g.arity, go(g.body), g.plus)
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        if isinstance(g, ForallI):
            return ForallI(g.var, go(g.body))
        if isinstance(g, (RArrow, RMaps)):
            return type(g)(g.rel, g.args, go(g.body))
        if isinstance(g, EqMaps):
            return EqMaps(g.left, g.right, go(g.body))
        if isinstance(g, CondGuard):
            return CondGuard(g.cond, go(g.body))
        return g
    return go(f)


def canonical_formula(f):
    """Rename bound variables to v0, v1, … (individual) and P0, P1, … (predicate)."""
    counter = itertools.count()

    def go(g, ienv, penv):
        if isinstance(g, Pred):
            key = (g.name, g.plus)
            name, plus = penv.get(key, (g.name, g.plus))
            return Pred(name, tuple(ren(a, ienv) for a in g.args), plus)
        if isinstance(g, Imp):
            return Imp(go(g.left, ienv, penv), go(g.right, ienv, penv))
        if isinstance(g, ForallI):
            nv = f"v{next(counter)}"
            return ForallI(nv, go(g.body, {**ienv, g.var: nv}, penv))
        if isinstance(g, ForallP):
            nv = f"P{next(counter)}"
            return ForallP(nv, g.arity, go(g.body, ienv, {**penv, (g.var, g.plus): (nv, False)}))
        if isinstance(g, (RArrow, RMaps)):
            return type(g)(g.rel, tuple(ren(a, ienv) for a in g.args), go(g.body, ienv, penv))
        if isinstance(g, EqMaps):
            return EqMaps(ren(g.left, ienv), ren(g.right, ienv), go(g.body, ienv, penv))
        if isinstance(g, CondGuard):
            return CondGuard(ren(g.cond, ienv), go(g.body, ienv, penv))
        if isinstance(g, Eps):
            return Eps(ren(g.elem, ienv), ren(g.set, ienv))
        return g

    def ren(t, ienv):
        if isinstance(t, IVar):
            return IVar(ienv.get(t.name, t.name))
        return IFn(t.name, tuple(ren(a, ienv) for a in t.args))

    return go(f, {}, {})


def formula_eq(a, b) -> bool:
    """Equality up to renaming of bound variables."""
    return canonical_formula(a) == canonical_formula(b)


# ------------------------------------------------------------ printing

def print_formula(f, ascii=False) -> str:
    sym = _ASCII if ascii else _UNI

    def term(t, top=True):
        return print_iterm(t, top, sym["meet"])

    def atomic(g):
        return isinstance(g, (Pred, Top, Eps)) or is_bottom(g)

    def quant_body(g):
        s = go(g)
        if atomic(g) or isinstance(g, (ForallI, ForallP)):
            return " " + s
        return f"({s})"

    def left(g):
        s = go(g)
        return s if atomic(g) or isinstance(g, (ForallI, ForallP)) else f"({s})"

    def args(ts):
        return "(" + ", ".join(term(t) for t in ts) + ")"

    def go(g):
        if is_bottom(g):
            return sym["bot"]
        if isinstance(g, Pred):
            name = g.name + (sym["plus"] if g.plus else "")
            return name + (args(g.args) if g.args else "")
        if isinstance(g, Top):
            return sym["top"]
        if isinstance(g, Eps):
            return f"{term(g.elem, False)} {sym['eps']} {term(g.set, False)}"
        if isinstance(g, Imp):
            return f"{left(g.left)} {sym['imp']} {go(g.right)}"
        if isinstance(g, ForallI):
            return f"{sym['all']}{g.var}{quant_body(g.body)}"
        if isinstance(g, ForallP):
            name = g.var + (sym["plus"] if g.plus else "")
            ar = f"/{g.arity}" if ascii and g.arity else ""
            return f"{sym['all2']}{name}{ar}{quant_body(g.body)}"
        if isinstance(g, RArrow):
            return f"{g.rel}{args(g.args)} {sym['imp']} {go(g.body)}"
        if isinstance(g, RMaps):
            return f"{g.rel}{args(g.args)} {sym['maps']} {go(g.body)}"
        if isinstance(g, EqMaps):
            return f"{term(g.left, False)} = {term(g.right, False)} {sym['maps']} {go(g.body)}"
        if isinstance(g, CondGuard):
            return f"C[{term(g.cond)}] {sym['imp']} {go(g.body)}"
        raise TypeError(g)
    return go(f)


_UNI = {"bot": "⊥", "top": "⊤", "eps": "ε", "imp": "→", "maps": "↦",
        "all": "∀", "all2": "∀", "plus": "⁺", "meet": "∧"}
_ASCII = {"bot": "bot", "top": "top", "eps": "eps", "imp": "->", "maps": "|->",
          "all": "forall ", "all2": "forall2 ", "plus": "+", "meet": "^"}


# ------------------------------------------------------------ parsing

class FormulaSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_FTOK = re.compile(r"""\s*(?:
    (?P<op>\|->|->|↦|→|C\[|[(),\]=~¬^∧⊥⊤{}]|/\d+)
  | (?P<num>\#\d+)
  | (?P<word>[^\W\d][\w′']*\+?|[01]|∀|ε)
  )""", re.VERBOSE)

_KEYWORDS = {"forall", "forall2", "exists", "exists2", "bot", "top", "eps",
             "and", "or", "∀", "ε"}


def _ftokens(text):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _FTOK.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        v = m.group(kind)
        v = {"→": "->", "↦": "|->", "¬": "~", "⊥": "bot", "⊤": "top", "ε": "eps",
             "^": "∧"}.get(v, v)
        toks.append((kind, v, m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Guard:
    """A pending left-hand side that only makes sense before -> or |->."""

    def __init__(self, kind, data, pos):
        self.kind, self.data, self.pos = kind, data, pos


class _FParser:
    def __init__(self, text):
        self.toks = _ftokens(text)
        self.i = 0
        self.arity = {}  # second-order variable arities seen so far

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, v):
        kind, val, pos = self.take()
        if val != v:
            raise FormulaSyntaxError(f"expected {v!r}, found {val or 'end of input'!r}", pos)

    # -- terms
    def iterm(self):
        t = self.iprimary()
        if self.peek()[1] == "∧":
            self.take()
            return iwedge(t, self.iterm())
        return t

    def iprimary(self):
        kind, v, pos = self.take()
        if v == "(":
            t = self.iterm()
            self.expect(")")
            return t
        if kind == "num":
            return inum(int(v[1:]))
        if v in ("0", "1"):
            return IFn(v)
        if kind == "word" and v not in _KEYWORDS and v[0].islower():
            if self.peek()[1] == "(":
                self.take()
                args = [self.iterm()]
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.iterm())
                self.expect(")")
                return IFn(v, tuple(args))
            return IVar(v)
        raise FormulaSyntaxError(f"expected an individual term, found {v!r}", pos)

    # -- formulas
    def formula(self, commas=True):
        items = [self.disj()]
        while commas and self.peek()[1] == ",":
            self.take()
            items.append(self.disj())
        kind, v, pos = self.peek()
        if v in ("->", "|->"):
            self.take()
            rhs = self.formula(commas)
            last = items[-1]
            if v == "|->":
                if not isinstance(last, _Guard) or last.kind not in ("rel", "eq"):
                    raise FormulaSyntaxError("|-> needs a relation or an equation on its left", pos)
                items[-1] = _Guard("maps-" + last.kind, last.data, last.pos)
            out = rhs
            for it in reversed(items):
                out = self.attach(it, out)
            return out
        if len(items) > 1:
            raise FormulaSyntaxError("a comma list must end with ->", pos)
        return self.close(items[0])

    def attach(self, it, body):
        if not isinstance(it, _Guard):
            return Imp(it, body)
        if it.kind == "rel":
            name, args = it.data
            return RArrow(name, args, body)
        if it.kind == "maps-rel":
            name, args = it.data
            return RMaps(name, args, body)
        if it.kind == "maps-eq":
            t, u = it.data
            return EqMaps(t, u, body)
        if it.kind == "eq":
            t, u = it.data
            return Imp(equality(t, u), body)
        if it.kind == "cond":
            return CondGuard(it.data, body)
        raise AssertionError(it.kind)

    def close(self, it):
        """A guard standing alone: only an equation is a formula by itself."""
        if isinstance(it, _Guard):
            if it.kind == "eq":
                return equality(*it.data)
            raise FormulaSyntaxError("a relation or C[...] must be followed by ->", it.pos)
        return it

    def disj(self):
        a = self.conj()
        while self.peek()[1] == "or":
            self.take()
            a = disj(self.close(a), self.close(self.conj()))
        return a

    def conj(self):
        a = self.unary()
        while self.peek()[1] == "and":
            self.take()
            a = conj(self.close(a), self.close(self.unary()))
        return a

    def unary(self):
        kind, v, pos = self.peek()
        if v == "~":
            self.take()
            return neg(self.close(self.unary()))
        if v in ("forall", "∀", "exists"):
            self.take()
            k2, name, p2 = self.take()
            if k2 != "word":
                raise FormulaSyntaxError("expected a variable", p2)
            second = name[0].isupper()
            if second:
                arity = self.arity_suffix()
                body = self.close(self.unary())
                arity = self.infer_arity(name, body, arity)
                if v == "exists":
                    return exists(name, body, True, arity)
                return ForallP(name, arity, body)
            if v == "exists" and self.peek()[1] == "{":
                hyps = self.brace_list()
                return exists(name, None, hyps=hyps)
            body = self.close(self.unary())
            return exists(name, body) if v == "exists" else ForallI(name, body)
        if v in ("forall2", "exists2"):
            self.take()
            k2, name, p2 = self.take()
            arity = self.arity_suffix()
            if self.peek()[1] == "{" and v == "exists2":
                hyps = self.brace_list()
                arity = self.infer_arity(name, imps(*hyps, BOT), arity)
                return exists(name, None, True, arity, hyps=hyps)
            body = self.close(self.unary())
            arity = self.infer_arity(name, body, arity)
            return exists(name, body, True, arity) if v == "exists2" else ForallP(name, arity, body)
        if v == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if v == "bot":
            self.take()
            return BOT
        if v == "top":
            self.take()
            return TOP
        if v == "C[":
            self.take()
            t = self.iterm()
            self.expect("]")
            return _Guard("cond", t, pos)
        if kind == "word" and v[0].isupper():
            self.take()
            plus = v.endswith("+")
            name = v[:-1] if plus else v
            args = ()
            if self.peek()[1] == "(":
                self.take()
                lst = [self.iterm()]
                while self.peek()[1] == ",":
                    self.take()
                    lst.append(self.iterm())
                self.expect(")")
                args = tuple(lst)
            return Pred(name, args, plus)
        # relation, equation or membership, all starting with a term
        if kind == "word" and v[0].islower() and self.peek(1)[1] == "(" and v not in _KEYWORDS:
            save = self.i
            t = self.iterm()
            nxt = self.peek()[1]
            if nxt in ("=", "eps"):
                return self.after_term(t, pos)
            return _Guard("rel", (t.name, t.args), pos)
        t = self.iterm()
        return self.after_term(t, pos)

    def after_term(self, t, pos):
        kind, v, p = self.take()
        if v == "=":
            return _Guard("eq", (t, self.iterm()), pos)
        if v == "eps":
            return Eps(t, self.iterm())
        raise FormulaSyntaxError(f"expected '=' or 'eps' after a term, found {v!r}", p)

    def brace_list(self):
        self.expect("{")
        hyps = [self.formula(False)]
        while self.peek()[1] == ",":
            self.take()
            hyps.append(self.formula(False))
        self.expect("}")
        return hyps

    def arity_suffix(self):
        kind, v, pos = self.peek()
        if kind == "op" and v.startswith("/"):
            self.take()
            return int(v[1:])
        return None

    def infer_arity(self, name, body, given):
        if given is not None:
            return given
        found = _pred_arity(body, name)
        return 0 if found is None else found


def _pred_arity(f, name):
    if isinstance(f, Pred):
        return len(f.args) if f.name == name and not f.plus else None
    if isinstance(f, ForallP):
        return None if f.var == name else _pred_arity(f.body, name)
    if isinstance(f, Imp):
        a = _pred_arity(f.left, name)
        return a if a is not None else _pred_arity(f.right, name)
    if isinstance(f, (ForallI, RArrow, RMaps, EqMaps, CondGuard)):
        return _pred_arity(f.body, name)
    return None


def parse_formula(text: str):
    """Parse the ASCII (or Unicode) formula syntax.

    ``A, B -> C``; ``forall x F``; ``forall2 X F`` (or ``forall X`` with an
    uppercase name); ``r(t) -> F``; ``r(t) |-> F``; ``t = u |-> F``;
    ``C[t] -> F``; ``t eps u``; ``bot``, ``top``, ``~``, ``or``, ``and``,
    ``exists``.  Quantifiers bind tightly: ``forall x A -> B`` is
    ``(∀x A) → B``.
    """
    p = _FParser(text)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"trailing input {v!r}", pos)
    return f


def parse_iterm(text: str):
    p = _FParser(text)
    t = p.iterm()
    if p.peek()[0] != "eof":
        raise FormulaSyntaxError("trailing input", p.peek()[2])
    return t


# ------------------------------------------------------------ classification

def is_first_order(f) -> bool:
    if is_bottom(f) or isinstance(f, Eps):
        return True
    if isinstance(f, Imp):
        return is_first_order(f.left) and is_first_order(f.right)
    if isinstance(f, (RArrow, RMaps, EqMaps, CondGuard, ForallI)):
        return is_first_order(f.body)
    return False


# ------------------------------------------------------------ forcing

class ForcingError(ValueError):
    pass


def _has_plus(f) -> bool:
    if isinstance(f, Pred):
        return f.plus
    if isinstance(f, ForallP):
        return f.plus or _has_plus(f.body)
    if isinstance(f, Imp):
        return _has_plus(f.left) or _has_plus(f.right)
    if isinstance(f, (ForallI, RArrow, RMaps, EqMaps, CondGuard)):
        return _has_plus(f.body)
    return False


def force(p, f):
    """p ⊩ F."""
    if isinstance(p, str):
        p = parse_iterm(p)
    if _has_plus(f):
        raise ForcingError("formula already mentions a forcing companion X⁺")
    return _force(p, f)


def _force(p, f):
    pv = iterm_vars(p)
    if isinstance(f, Pred):
        q = fresh("q", pv | free_ivars(f))
        return ForallI(q, CondGuard(iwedge(p, IVar(q)), Pred(f.name, (IVar(q),) + f.args, True)))
    if isinstance(f, Imp):
        q = fresh("q", pv | free_ivars(f))
        qv = IVar(q)
        return ForallI(q, Imp(_force(qv, f.left), _force(iwedge(p, qv), f.right)))
    if isinstance(f, RArrow):
        return RArrow(f.rel, f.args, _force(p, f.body))
    if isinstance(f, RMaps):
        return RMaps(f.rel, f.args, _force(p, f.body))
    if isinstance(f, EqMaps):
        return EqMaps(f.left, f.right, _force(p, f.body))
    if isinstance(f, CondGuard):
        return CondGuard(f.cond, _force(p, f.body))
    if isinstance(f, ForallI):
        if f.var in pv:
            nv = fresh(f.var, pv | all_names(f.body))
            return ForallI(nv, _force(p, subst_ind(f.body, f.var, IVar(nv))))
        return ForallI(f.var, _force(p, f.body))
    if isinstance(f, ForallP):
        return ForallP(f.var, f.arity + 1, _force(p, f.body), plus=True)
    if isinstance(f, Eps):
        return CondGuard(iwedge(p, ONE_T), f)
    if isinstance(f, Top):
        return TOP
    raise TypeError(f)


# ------------------------------------------------------------ propositional structure

@dataclass(frozen=True, slots=True)
class PArrow:
    left: object
    right: object


O = "O"


def prop_structure(f):
    if isinstance(f, (Pred, Top, Eps)):
        return O
    if isinstance(f, Imp):
        return PArrow(prop_structure(f.left), prop_structure(f.right))
    if isinstance(f, (RArrow, CondGuard)):
        return PArrow(O, prop_structure(f.body))
    if isinstance(f, (RMaps, EqMaps, ForallI, ForallP)):
        return prop_structure(f.body)
    raise TypeError(f)


def print_ps(s, top=True) -> str:
    if s == O:
        return "O"
    inner = f"{print_ps(s.left, False)}→{print_ps(s.right, True)}"
    return inner if top else f"({inner})"


# ------------------------------------------------------------ χ_F, χ′_F

def _bar(g):
    return lift(g)


@lru_cache(maxsize=None)
def _chi_for(ps):
    if ps == O:
        return Atom("rd"), Atom("wr")
    chiA, chipA = _chi_for(ps.left)
    chiB, chipB = _chi_for(ps.right)
    x, y = Var("x"), Var("y")
    g0 = _bar(gamma_table()["γ0"])
    a0 = _bar(cexpr("α0"))
    chi = compile_term(lam("x", "y", App(g0, App(chiB, App(x, App(chipA, y))))))
    chip = compile_term(lam("x", "y", App(chipB, App(App(a0, x), App(chiA, y)))))
    return chi, chip


def synth_chi(f):
    """(χ_F, χ′_F); depends only on the propositional structure of F."""
    return _chi_for(prop_structure(f))


# ------------------------------------------------------------ δ_F, δ′_F

class NotFirstOrder(ValueError):
    pass


@lru_cache(maxsize=None)
def _delta_gammas():
    return {
        "bot-α": synth("p^q", "p", "α"),
        "p⇒p∧1": synth("p", "p^1", "α′"),
        "eps-α": synth("p^1", "p", "α"),
        "imp-α": synth("p^(q^r)", "p", "α"),
        "imp-β": synth("p^(q^r)", "q", "β"),
        "imp-γ": synth("p^(q^r)", "1^r", "γ"),
        "rel-α": synth("p^(1^r)", "p^r", "α"),
    }


def _sp(name, t):
    return spine_term(_delta_gammas()[name], t)


def synth_delta(f):
    """(δ_F, δ′_F) for a first-order formula F."""
    if not is_first_order(f):
        raise NotFirstOrder(f"not first order: {print_formula(f)}")
    return _delta_for(canonical_formula(f))


@lru_cache(maxsize=None)
def _delta_for(f):
    x, y, z, d = Var("x"), Var("y"), Var("z"), Var("d")
    chi, chip = Atom("rd"), Atom("wr")
    a0 = _bar(cexpr("α0"))
    if is_bottom(f) or isinstance(f, Eps):
        a = "bot-α" if is_bottom(f) else "eps-α"
        delta = compile_term(lam("x", App(chi, lam("y", App(x, _sp(a, y))))))
        deltap = compile_term(lam("x", "y", App(App(chip, x), _sp("p⇒p∧1", y))))
        return delta, deltap
    if isinstance(f, Imp):
        dA, dpA = _delta_for(f.left)
        dB, dpB = _delta_for(f.right)
        inner = lam("d", App(App(x, _sp("imp-α", z)), App(App(dpA, y), _sp("imp-β", z))))
        body = App(App(chip, App(dB, inner)), _sp("imp-γ", z))
        delta = compile_term(lam("x", "y", App(chi, lam("z", body))))
        deltap = compile_term(lam("x", "y", "z",
                                  App(App(dpB, App(App(a0, x), App(dA, lam("d", z)))),
                                      _sp("p⇒p∧1", y))))
        return delta, deltap
    if isinstance(f, (RArrow, CondGuard)):
        dB, dpB = _delta_for(f.body)
        abar = _bar(_delta_gammas()["rel-α"])
        delta = compile_term(lam("x", "y", App(abar, App(dB, lam("z", app(x, z, y))))))
        deltap = compile_term(lam("x", "y", "z",
                                  App(App(dpB, app(a0, x, z)), _sp("p⇒p∧1", y))))
        return delta, deltap
    if isinstance(f, (RMaps, EqMaps, ForallI)):
        return _delta_for(f.body)
    raise NotFirstOrder(print_formula(f))


# ------------------------------------------------------------ natural deduction

@dataclass(frozen=True)
class Judgment:
    context: tuple       # ((name, Formula), …)
    subject: object      # λ-term
    conclusion: object

    def compiled(self):
        return compile_term(self.subject)

    def __str__(self):
        from .terms import print_lterm
        ctx = ", ".join(f"{n} : {print_formula(a)}" for n, a in self.context)
        head = f"{ctx} ⊢" if ctx else "⊢"
        return f"{head} {print_lterm(self.subject)} : {print_formula(self.conclusion)}"


class NDError(ValueError):
    def __init__(self, node, reason):
        super().__init__(f"{node}: {reason}")
        self.node = node
        self.reason = reason


@dataclass(frozen=True)
class Ax:
    """Rule 1: a variable of the context."""
    var: str


@dataclass(frozen=True)
class AppR:
    """Rule 2."""
    fun: object
    arg: object


@dataclass(frozen=True)
class LamR:
    """Rule 3: discharge ``var : hyp``."""
    var: str
    hyp: object
    body: object


@dataclass(frozen=True)
class Gen:
    """Rule 4: generalize an individual (arity None) or predicate variable."""
    var: str
    body: object
    arity: Optional[int] = None


@dataclass(frozen=True)
class InstI:
    """Rule 5: ∀x A ⊢ A[τ/x]."""
    body: object
    term: object


@dataclass(frozen=True)
class InstP:
    """Rule 6: ∀X A ⊢ A[F/X y…]."""
    body: object
    formula: object
    ys: tuple = ()


@dataclass(frozen=True)
class CcAx:
    """cc : ((A → B) → A) → A."""
    a: object
    b: object


def peirce(a, b):
    return Imp(Imp(Imp(a, b), a), a)


def nd_check(d, context=()) -> Judgment:
    """Check a derivation tree and return the judgment it proves."""
    context = tuple(context)
    names = [n for n, _ in context]
    if len(set(names)) != len(names):
        raise NDError("context", "variables must be distinct")
    return _nd(d, context)


def _nd(d, ctx):
    if isinstance(d, Ax):
        for n, a in ctx:
            if n == d.var:
                return Judgment(ctx, Var(n), a)
        raise NDError(f"rule 1 [{d.var}]", "variable not in the context")
    if isinstance(d, AppR):
        jf = _nd(d.fun, ctx)
        ja = _nd(d.arg, ctx)
        if not isinstance(jf.conclusion, Imp):
            raise NDError("rule 2", f"function has type {print_formula(jf.conclusion)}, not an implication")
        if not formula_eq(jf.conclusion.left, ja.conclusion):
            raise NDError("rule 2", f"argument proves {print_formula(ja.conclusion)}, "
                                    f"expected {print_formula(jf.conclusion.left)}")
        return Judgment(ctx, App(jf.subject, ja.subject), jf.conclusion.right)
    if isinstance(d, LamR):
        if any(n == d.var for n, _ in ctx):
            raise NDError(f"rule 3 [{d.var}]", "variable already in the context")
        jb = _nd(d.body, ctx + ((d.var, d.hyp),))
        return Judgment(ctx, lam(d.var, jb.subject), Imp(d.hyp, jb.conclusion))
    if isinstance(d, Gen):
        jb = _nd(d.body, ctx)
        if d.arity is None:
            if any(d.var in free_ivars(a) for _, a in ctx):
                raise NDError(f"rule 4 [{d.var}]", "variable is free in the context")
            return Judgment(ctx, jb.subject, ForallI(d.var, jb.conclusion))
        if any((d.var, False) in free_pvars(a) for _, a in ctx):
            raise NDError(f"rule 4 [{d.var}]", "predicate variable is free in the context")
        found = _pred_arity(jb.conclusion, d.var)
        if found is not None and found != d.arity:
            raise NDError(f"rule 4 [{d.var}]", f"used with arity {found}, declared {d.arity}")
        return Judgment(ctx, jb.subject, ForallP(d.var, d.arity, jb.conclusion))
    if isinstance(d, InstI):
        jb = _nd(d.body, ctx)
        if not isinstance(jb.conclusion, ForallI):
            raise NDError("rule 5", f"{print_formula(jb.conclusion)} is not ∀x A")
        c = jb.conclusion
        return Judgment(ctx, jb.subject, subst_ind(c.body, c.var, d.term))
    if isinstance(d, InstP):
        jb = _nd(d.body, ctx)
        c = jb.conclusion
        if not isinstance(c, ForallP):
            raise NDError("rule 6", f"{print_formula(c)} is not ∀X A")
        try:
            out = subst_pred(c.body, c.var, c.arity, d.formula, d.ys)
        except ArityError as e:
            raise NDError("rule 6", str(e)) from None
        return Judgment(ctx, jb.subject, out)
    if isinstance(d, CcAx):
        return Judgment(ctx, Atom("cc"), peirce(d.a, d.b))
    raise NDError(repr(d), "unknown derivation node")


def example_derivations() -> dict:
    """Hand-written derivations: name -> (derivation, context, should check)."""
    A, B, C = Pred("A"), Pred("B"), Pred("C")
    k = LamR("x", A, LamR("y", B, Ax("x")))
    comp = LamR("f", Imp(A, B), LamR("g", Imp(B, C), LamR("x", A,
                AppR(Ax("g"), AppR(Ax("f"), Ax("x"))))))
    pc = Gen("X", Gen("Y", CcAx(Pred("X"), Pred("Y")), 0), 0)
    good = {"weakening": (k, ()), "composition": (comp, ()), "peirce": (pc, ())}
    bad = {
        "bad-unknown-variable": (LamR("x", A, LamR("y", B, Ax("z"))), ()),
        "bad-argument-type": (LamR("f", Imp(A, B), LamR("g", Imp(B, C), LamR("x", A,
                              AppR(Ax("g"), AppR(Ax("f"), Ax("f")))))), ()),
        "bad-not-implication": (LamR("x", A, AppR(Ax("x"), Ax("x"))), ()),
        "bad-generalize-free": (Gen("A", Ax("x"), 0), (("x", A),)),
        "bad-instantiate": (LamR("x", A, InstI(Ax("x"), IVar("t"))), ()),
        "bad-rebind": (LamR("x", A, LamR("x", B, Ax("x"))), ()),
    }
    out = {n: (d, c, True) for n, (d, c) in good.items()}
    out.update({n: (d, c, False) for n, (d, c) in bad.items()})
    return out
