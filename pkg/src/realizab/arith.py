"""Numerals, storage, the fixpoint combinator and a small arithmetic catalog.

Every function in the catalog is written in continuation style: for a
unary f, ``θ ⋆ m̄·κ·π`` reaches ``κ ⋆ n̄·π`` with ``n = f(m)`` and ``n̄``
literally equal to ``numeral(n)``.  Results are always built by pushing
``σ`` onto a literal numeral, which is what makes that equality hold.
"""

from __future__ import annotations

from functools import lru_cache

from .terms import App, Const, Var, app, compile_term, lam, parse_lterm

SIGMA_SRC = r"\n \f \x (f)(n) f x"
ZERO_SRC = r"\x \y y"


@lru_cache(maxsize=None)
def zero():
    return compile_term(parse_lterm(ZERO_SRC))


@lru_cache(maxsize=None)
def succ_term():
    """Compiled σ."""
    return compile_term(parse_lterm(SIGMA_SRC))


_numerals = []


def numeral(n: int):
    """(σ)^n 0̄ as a closed c-term."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    if not _numerals:
        _numerals.append(zero())
    while len(_numerals) <= n:
        _numerals.append(App(succ_term(), _numerals[-1]))
    return _numerals[n]


def numeral_value(t):
    """Inverse of numeral on literal σ-towers, else None."""
    n = 0
    s, z = succ_term(), zero()
    while isinstance(t, App) and t.fun == s:
        t = t.arg
        n += 1
    return n if t == z else None


def expand(t):
    """Replace numeral literals by their σ-towers."""
    from .terms import Num
    if isinstance(t, Num):
        return numeral(t.n)
    if isinstance(t, App):
        return App(expand(t.fun), expand(t.arg))
    return t


# ------------------------------------------------------------ lambda sources
# λ-term sources for the storage pair and the fixpoint, kept as text so they
# read like their usual definitions.

S_SRC = r"\g \x (g)(σ) x"
T_SRC = r"\f \n (n) S f z"
A_SRC = r"\a \f (f)(a) a f"


def _env():
    return {"σ": succ_term(), "z": zero()}


@lru_cache(maxsize=None)
def storage_pair():
    """(T, S) with T = λfλn(n)Sf0̄ and S = λgλx(g)(σ)x."""
    S = compile_term(parse_lterm(S_SRC, env=_env()))
    T = compile_term(parse_lterm(T_SRC, env={**_env(), "S": S}))
    return T, S


@lru_cache(maxsize=None)
def fixpoint_parts():
    A = compile_term(parse_lterm(A_SRC))
    return App(A, A), A


def fixpoint():
    """Y = AA with A = λaλf(f)(a)af."""
    return fixpoint_parts()[0]


# ------------------------------------------------------------ catalog
# Terms are assembled from small λ-term builders and compiled once.

def V(name):
    return Var(name)


def _sigma_of(t):
    return App(succ_term(), t)


def _iter2(n, F, k, a, b):
    """Run the 2-state continuation step F exactly n times from (a, b).

    F ⋆ a·b·c ≻ c ⋆ a'·b'.  The loop body hands the rest of the iteration to
    the continuation so states stay literal numerals.
    """
    phi = lam("r", "k", "a", "b",
              app(F, V("a"), V("b"),
                  lam("a'", "b'", app(V("r"), V("k"), V("a'"), V("b'")))))
    omega = lam("k", "a", "b", app(V("k"), V("a"), V("b")))
    return app(n, phi, omega, k, a, b)


def _zero_test(n, if_zero, if_pos):
    """(n)(λd pos) zero: picks if_zero when n = 0."""
    return app(n, lam("d", if_pos), if_zero)


def _build_sources():
    z = zero()
    sigma = succ_term()
    T, S = storage_pair()
    m, n, k, a, b, c = (V(x) for x in "mnkabc")
    src = {}

    src["succ"] = lam("m", "k", app(T, k, _sigma_of(m)))
    src["add"] = lam("m", "n", "k", app(m, S, k, n))
    src["d0"] = lam("n", "k", app(n, S, k, n))
    src["d1"] = lam("n", "k", app(n, S, k, _sigma_of(n)))

    step_pred = lam("a", "b", "c", app(c, b, _sigma_of(b)))
    src["pred"] = lam("n", "k", _iter2(n, step_pred, lam("a", "b", app(k, a)), z, z))

    step_half = lam("a", "b", "c", app(c, b, _sigma_of(a)))
    src["d2"] = lam("n", "k", _iter2(n, step_half, lam("a", "b", app(k, a)), z, z))

    step_par = lam("a", "b", "c", app(c, b, a))
    src["parity"] = lam("n", "k", _iter2(n, step_par, lam("a", "b", app(k, a)), z, numeral(1)))

    # monus m ∸ n: apply pred n times to m
    pred = src["pred"]
    step_monus = lam("a", "b", "c", app(pred, a, lam("p", app(c, V("p"), b))))
    src["monus"] = lam("m", "n", "k", _iter2(n, step_monus, lam("a", "b", app(k, a)), m, z))

    # triangular number 0+1+...+s, then the diagonal pairing
    add = src["add"]
    step_tri = lam("a", "b", "c",
                   app(add, b, _sigma_of(a), lam("t", app(c, _sigma_of(a), V("t")))))
    src["tri"] = lam("n", "k", _iter2(n, step_tri, lam("a", "b", app(k, b)), z, z))
    tri = src["tri"]
    src["pair"] = lam("m", "n", "k",
                      app(add, m, n, lam("s", app(tri, V("s"),
                                                  lam("t", app(add, m, V("t"), k))))))

    # enumerate pairs in code order: (a, 0) -> (0, a+1), (a, b+1) -> (a+1, b)
    step_next = lam("a", "b", "c",
                    _zero_test(b,
                               app(c, z, _sigma_of(a)),
                               app(pred, b, lam("p", app(c, _sigma_of(a), V("p"))))))
    src["fst"] = lam("n", "k", _iter2(n, step_next, lam("a", "b", app(k, a)), z, z))
    src["snd"] = lam("n", "k", _iter2(n, step_next, lam("a", "b", app(k, b)), z, z))

    # branching terms
    x, y, w = V("x"), V("y"), V("w")
    par = src["parity"]
    # e ⋆ i·ξ·η ≻ ξ if i is odd, η if i is even
    src["e"] = lam("i", "x", "y", app(par, V("i"), lam("p", _zero_test(V("p"), y, x))))
    e = src["e"]
    half = src["d2"]
    # e4 ⋆ i·ξ·η·ζ: even -> ξ, 4i+1 -> η, 4i+3 -> ζ
    src["e4"] = lam("i", "x", "y", "w",
                    app(e, V("i"),
                        app(half, V("i"), lam("h", app(e, V("h"), w, y))),
                        x))
    monus = src["monus"]
    # cp ⋆ m̄·n̄·ξ·η·ζ: m<n -> ξ, n<m -> η, m=n -> ζ
    src["cp"] = lam("m", "n", "x", "y", "w",
                    app(monus, m, n, lam("u",
                        app(monus, n, m, lam("v",
                            _zero_test(V("u"), _zero_test(V("v"), w, x), y))))))
    return src


def _pair_code(a, b):
    return a + (a + b) * (a + b + 1) // 2


def _unpair(z):
    s = 0
    while (s + 1) * (s + 2) // 2 <= z:
        s += 1
    a = z - s * (s + 1) // 2
    return a, s - a


# name -> (arity, oracle); None oracle marks a branching term
CATALOG_TABLE = {
    "succ": (1, lambda m: m + 1),
    "pred": (1, lambda m: max(m - 1, 0)),
    "add": (2, lambda m, n: m + n),
    "d0": (1, lambda m: 2 * m),
    "d1": (1, lambda m: 2 * m + 1),
    "d2": (1, lambda m: m // 2),
    "parity": (1, lambda m: m % 2),
    "monus": (2, lambda m, n: max(m - n, 0)),
    "tri": (1, lambda m: m * (m + 1) // 2),
    "pair": (2, _pair_code),
    "fst": (1, lambda z: _unpair(z)[0]),
    "snd": (1, lambda z: _unpair(z)[1]),
    "e": (1, None),
    "e4": (1, None),
    "cp": (2, None),
}

ALIASES = {"double": "d0", "odd-double": "d1", "half": "d2", "p": "pred",
           "quad-branch": "e4", "comparator": "cp"}


@lru_cache(maxsize=None)
def _catalog():
    return {name: compile_term(t) for name, t in _build_sources().items()}


def catalog_names():
    return list(CATALOG_TABLE)


def arith_term(name: str):
    name = ALIASES.get(name, name)
    cat = _catalog()
    if name not in cat:
        raise KeyError(f"unknown arithmetic term {name!r}")
    return cat[name]


def oracle(name: str):
    return CATALOG_TABLE[ALIASES.get(name, name)][1]


def arity(name: str) -> int:
    return CATALOG_TABLE[ALIASES.get(name, name)][0]


def e_branch(i: int) -> int:
    """Index of the branch e selects: 0 for odd, 1 for even."""
    return 0 if i % 2 else 1


def e4_branch(i: int) -> int:
    """0, 1 or 2 for i even, 4i'+1, 4i'+3."""
    if i % 2 == 0:
        return 0
    return 1 if i % 4 == 1 else 2


def cp_branch(m: int, n: int) -> int:
    if m < n:
        return 0
    if n < m:
        return 1
    return 2


def check_function(name, *args, budget=200_000):
    """Run a catalog function on numerals; True when the contract holds."""
    from .machine import Process, reaches
    from .terms import Stack
    kappa = Const("κ")
    f = oracle(name)
    start = Process(arith_term(name), Stack(tuple(numeral(a) for a in args) + (kappa,)))
    target = Process(kappa, Stack((numeral(f(*args)),)))
    return reaches(start, target, budget)


def check_branch(name, *args, budget=200_000):
    from .machine import Process, reaches
    from .terms import Stack
    names = (Const("ξ"), Const("η"), Const("ζ"))
    if name == "e":
        names = names[:2]
        want = names[e_branch(*args)]
    elif name == "e4":
        want = names[e4_branch(*args)]
    else:
        want = names[cp_branch(*args)]
    start = Process(arith_term(name), Stack(tuple(numeral(a) for a in args) + names))
    return reaches(start, Process(want, Stack()), budget)
