"""Term syntax: lambda-terms, c-terms, stacks, parsing and printing.

A single family of immutable node classes serves both lambda-terms (which
may contain ``Lam``) and c-terms (which never do).  Application is binary
and left-nested; n-ary display is printing sugar only.

Text syntax follows the juxtaposition convention used throughout:
``(f) a b`` is ``f`` applied to ``a`` then ``b``, and an argument that
starts with ``(`` or a backslash extends to the end of the enclosing
group, so ``(f)(n) f x`` reads as ``f`` applied to ``n f x``.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

sys.setrecursionlimit(max(sys.getrecursionlimit(), 50000))

# elementary combinators plus quote (qt), read (rd) and write (wr)
COMBINATORS = ("B", "C", "E", "I", "K", "W", "cc")
INSTRUCTIONS = ("qt", "rd", "wr")
ATOM_NAMES = COMBINATORS + INSTRUCTIONS

DEFAULT_BASE = "π0"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if self.name not in ATOM_NAMES:
            raise ValueError(f"unknown atom {self.name!r}")


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Const:
    """Opaque test constant; the machine gets stuck when it reaches one."""
    name: str


@dataclass(frozen=True, slots=True)
class Num:
    """Numeral literal, expanded lazily by the machine."""
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("numeral literal must be a natural number")


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Lam:
    var: str
    body: "Term"


@dataclass(frozen=True, slots=True)
class Stack:
    items: tuple = ()
    base: str = DEFAULT_BASE

    def push(self, *terms) -> "Stack":
        return Stack(tuple(terms) + self.items, self.base)

    def bottom_push(self, tau) -> "Stack":
        """pi^tau: insert tau as the last item above the base."""
        return Stack(self.items + (tau,), self.base)

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True, slots=True)
class Cont:
    """Continuation k_pi."""
    stack: Stack


Term = Union[Atom, Var, Const, Num, App, Lam, Cont]
LEAVES = (Atom, Var, Const, Num, Cont)


def stack(*items, base: str = DEFAULT_BASE) -> Stack:
    return Stack(tuple(items), base)


def app(f, *args):
    for a in args:
        f = App(f, a)
    return f


def lam(*names_and_body):
    *names, body = names_and_body
    for x in reversed(names):
        body = Lam(x, body)
    return body


def spine(t):
    """Split t into its head and argument list."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


# ---------------------------------------------------------------- variables

def free_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var}
    return frozenset()


def occurs(x: str, t) -> bool:
    """True if variable x occurs free in t."""
    while True:
        if isinstance(t, Var):
            return t.name == x
        if isinstance(t, App):
            if occurs(x, t.arg):
                return True
            t = t.fun
            continue
        if isinstance(t, Lam):
            if t.var == x:
                return False
            t = t.body
            continue
        return False


def is_closed(t) -> bool:
    return not free_vars(t)


def has_lambda(t) -> bool:
    if isinstance(t, Lam):
        return True
    if isinstance(t, App):
        return has_lambda(t.fun) or has_lambda(t.arg)
    return False


def contains(t, pred) -> bool:
    if pred(t):
        return True
    if isinstance(t, App):
        return contains(t.fun, pred) or contains(t.arg, pred)
    if isinstance(t, Lam):
        return contains(t.body, pred)
    return False


def size(t) -> int:
    if isinstance(t, App):
        return size(t.fun) + size(t.arg)
    if isinstance(t, Lam):
        return 1 + size(t.body)
    return 1


def substitute(t, x: str, u):
    """Replace every occurrence of variable x in the c-term t by u.

    c-terms have no binders, so this is literal replacement.
    """
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, App):
        f = substitute(t.fun, x, u)
        a = substitute(t.arg, x, u)
        if f is t.fun and a is t.arg:
            return t
        return App(f, a)
    if isinstance(t, Lam):
        raise TypeError("substitute works on c-terms; use lsubst for lambda-terms")
    return t


def substitute_many(t, mapping: Mapping[str, object]):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(substitute_many(t.fun, mapping), substitute_many(t.arg, mapping))
    if isinstance(t, Lam):
        raise TypeError("substitute_many works on c-terms")
    return t


def fresh_name(base: str, avoid) -> str:
    name = base
    i = 0
    while name in avoid:
        i += 1
        name = f"{base}{i}"
    return name


def lsubst(t, x: str, u):
    """Capture-avoiding substitution t[u/x] on lambda-terms."""
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, App):
        return App(lsubst(t.fun, x, u), lsubst(t.arg, x, u))
    if isinstance(t, Lam):
        if t.var == x or not occurs(x, t.body):
            return t
        fu = free_vars(u)
        if t.var in fu:
            y = fresh_name(t.var, fu | free_vars(t.body) | {x})
            body = lsubst(t.body, t.var, Var(y))
            return Lam(y, lsubst(body, x, u))
        return Lam(t.var, lsubst(t.body, x, u))
    return t


def canonical(t):
    """Rename bound variables to x0, x1, ... by binding depth.

    Two lambda-terms are equal up to renaming of bound names exactly when
    their canonical forms are equal.
    """
    avoid = free_vars(t)

    def name_at(depth):
        name = f"x{depth}"
        while name in avoid:
            name += "'"
        return name

    def go(t, env, depth):
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, App):
            return App(go(t.fun, env, depth), go(t.arg, env, depth))
        if isinstance(t, Lam):
            y = name_at(depth)
            return Lam(y, go(t.body, {**env, t.var: y}, depth + 1))
        return t

    return go(t, {}, 0)


def alpha_eq(s, t) -> bool:
    return canonical(s) == canonical(t)


# ---------------------------------------------------------------- printing

def _leaf_str(t) -> str:
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return f"#{t.n}"
    if isinstance(t, Cont):
        return f"k[{print_stack(t.stack)}]"
    raise TypeError(t)


def _render(t, cterm: bool):
    """Return (text, extendable).  extendable means a leaf argument may follow."""
    if isinstance(t, Var) and cterm:
        return "?" + t.name, True
    if isinstance(t, LEAVES):
        return _leaf_str(t), True
    if isinstance(t, Lam):
        body, _ = _render(t.body, cterm)
        return f"\\{t.var} {body}", False
    # application
    head, args = spine(t)
    out = "(" + _render(head, cterm)[0] + ")"
    for i, a in enumerate(args):
        if isinstance(a, LEAVES):
            out += " " + _render(a, cterm)[0]
            continue
        last = i == len(args) - 1
        text, _ = _render(a, cterm)
        if last:
            return out + " " + text, False
        # a compound argument followed by more arguments: close the prefix
        out = "(" + out + " " + text + ")"
    return out, True


def print_cterm(t) -> str:
    """Print a c-term; variables are written ?x, test constants bare."""
    return _render(t, True)[0]


def print_lterm(t) -> str:
    return _render(t, False)[0]


def print_stack(s: Stack) -> str:
    parts = []
    for item in s.items:
        text = print_cterm(item)
        if not isinstance(item, LEAVES):
            text = "(" + text + ")"
        parts.append(text)
    parts.append(s.base)
    return ".".join(parts)


def print_process(head, s: Stack) -> str:
    return f"{print_cterm(head)} ⋆ {print_stack(s)}"


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"""\s*(?:
      (?P<kopen>k\[)
    | (?P<num>\#\d+)
    | (?P<qvar>\?[^\W\d]\w*'*)
    | (?P<ident>[^\W\d][\w′]*'*)
    | (?P<sym>[()\]\\.λ])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "sym" and value == "λ":
            value = "\\"
        toks.append((kind, value, start))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, mode, env, bound_consts):
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode  # "lterm": identifiers are variables; "cterm": constants
        self.env = env or {}
        self.consts = set(bound_consts or ())

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def at_end_of_group(self):
        kind, v, _ = self.peek()
        return kind == "eof" or (kind == "sym" and v in ")]." )

    def ident(self, name, bound):
        if name in bound:
            return Var(name)
        if name in ATOM_NAMES:
            return Atom(name)
        if name in ("χ",):
            return Atom("rd")
        if name in ("χ′", "χ'"):
            return Atom("wr")
        if name in ("ς",):
            return Atom("qt")
        if name in self.env:
            return self.env[name]
        if name in self.consts:
            return Const(name)
        return Const(name) if self.mode == "cterm" else Var(name)

    def leaf(self, bound):
        kind, v, pos = self.peek()
        if kind == "ident":
            self.take()
            return self.ident(v, bound)
        if kind == "qvar":
            self.take()
            return Var(v[1:])
        if kind == "num":
            self.take()
            return Num(int(v[1:]))
        if kind == "kopen":
            self.take()
            s = self.stack_body(bound, closer="]")
            self.expect("]")
            return Cont(s)
        return None

    def term(self, bound):
        kind, v, pos = self.peek()
        if kind == "sym" and v == "\\":
            self.take()
            k, name, p = self.take()
            if k != "ident":
                raise ParseError("expected a variable after backslash", p)
            body = self.term(bound | {name})
            return Lam(name, body)
        if kind == "sym" and v == "(":
            self.take()
            head = self.term(bound)
            self.expect(")")
        else:
            head = self.leaf(bound)
            if head is None:
                raise ParseError(f"expected a term, found {v or 'end of input'!r}", pos)
        while not self.at_end_of_group():
            kind, v, pos = self.peek()
            if kind == "sym" and v in ("(", "\\"):
                head = App(head, self.term(bound))
                break
            a = self.leaf(bound)
            if a is None:
                raise ParseError(f"unexpected {v!r}", pos)
            head = App(head, a)
        return head

    def stack_body(self, bound, closer=None):
        items = []
        base = DEFAULT_BASE
        while True:
            kind, v, pos = self.peek()
            if kind == "ident" and _is_base_name(v):
                self.take()
                base = v
                break
            if kind == "eof" or (closer and v == closer):
                break
            items.append(self.term(bound))
            kind, v, pos = self.peek()
            if kind == "sym" and v == ".":
                self.take()
                continue
            break
        return Stack(tuple(items), base)

    def finish(self):
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {v!r}", pos)


def _is_base_name(name: str) -> bool:
    return name.startswith("π") or re.fullmatch(r"pi\d*", name) is not None


def parse_lterm(text: str, env: Optional[Mapping[str, object]] = None,
                consts: Iterable[str] = ()) -> Term:
    """Parse a lambda-term.  Free identifiers become variables unless they are
    listed in ``consts`` or bound in ``env`` (which maps names to terms)."""
    p = _Parser(text, "lterm", env, consts)
    t = p.term(frozenset())
    p.finish()
    return t


def parse_cterm(text: str, env=None) -> Term:
    """Parse a c-term.  Bare identifiers are test constants, ?x are variables."""
    p = _Parser(text, "cterm", env, ())
    t = p.term(frozenset())
    p.finish()
    if has_lambda(t):
        raise ParseError("c-terms cannot contain abstractions", 0)
    return t


def parse_stack(text: str, env=None) -> Stack:
    """Parse ``a.b.π0``; the base is optional and defaults to π0."""
    p = _Parser(text, "cterm", env, ())
    s = p.stack_body(frozenset())
    p.finish()
    return s


# ---------------------------------------------------------------- compiler

_I, _K, _E, _W, _C, _B = (Atom(n) for n in "IKEWCB")


# free variables of subterms met during one compile, keyed by id; the
# entry keeps the term alive so that ids are not reused meanwhile
_fv_memo: Optional[dict] = None


def _occurs(x, t):
    if _fv_memo is None:
        return occurs(x, t)
    return x in _memo_fv(t)


def _memo_fv(t):
    hit = _fv_memo.get(id(t))
    if hit is not None:
        return hit[1]
    if isinstance(t, Var):
        fv = frozenset((t.name,))
    elif isinstance(t, App):
        fv = _memo_fv(t.fun) | _memo_fv(t.arg)
    elif isinstance(t, Lam):
        fv = _memo_fv(t.body) - {t.var}
    else:
        fv = frozenset()
    _fv_memo[id(t)] = (t, fv)
    return fv


def eliminate_abstraction(x: str, t):
    """lambda x t for a c-term t, first applicable rule of six."""
    occurs = _occurs
    if not occurs(x, t):
        return App(_K, t)                                          # rule 1
    if isinstance(t, Var) and t.name == x:
        return _I                                                  # rule 2
    assert isinstance(t, App), f"no rule applies to {t!r}"
    u, v = t.fun, t.arg
    if not occurs(x, v):
        return App(App(_C, eliminate_abstraction(x, App(_E, u))), v)  # rule 3
    if isinstance(v, Var) and v.name == x:
        if not occurs(x, u):
            return App(_E, u)                                      # rule 4
        return App(_W, eliminate_abstraction(x, App(_E, u)))      # rule 5
    assert isinstance(v, App), f"no rule applies to {t!r}"
    return eliminate_abstraction(x, app(_B, u, v.fun, v.arg))      # rule 6


def compile_term(t):
    """Compile a lambda-term to a c-term (abstractions innermost first)."""
    global _fv_memo
    outer = _fv_memo
    if outer is None:
        _fv_memo = {}
    try:
        return _compile(canonical(t))
    finally:
        _fv_memo = outer


def _compile(t):
    if isinstance(t, Lam):
        return eliminate_abstraction(t.var, _compile(t.body))
    if isinstance(t, App):
        return App(_compile(t.fun), _compile(t.arg))
    return t


compile = compile_term  # noqa: A001  (public name used by the CLI and docs)
