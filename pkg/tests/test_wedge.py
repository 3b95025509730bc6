import pytest

from gen import rng_for

from realizab.machine import Process, reaches
from realizab.terms import Const, Stack
from realizab.wedge import (
    ONE, MatchFailure, Wedge, WVar, apply_cexpr, apply_prim, cert, cexpr, chain,
    derived_table, gamma_table, lift, parse_wedge, pretty_wedge, print_wedge,
    spec_of, spine_term, synth, witnesses, wvars,
)

W = parse_wedge


def test_parse_and_print():
    t = W("(p^q)^r")
    assert t == Wedge(Wedge(WVar("p"), WVar("q")), WVar("r"))
    assert pretty_wedge(t) == "(p∧q)∧r"
    assert print_wedge(t) == "((p^q)^r)"
    assert W("p ∧ 1") == Wedge(WVar("p"), ONE)


@pytest.mark.parametrize("prim,src,dst", [
    ("α0", "(p^q)^r", "p^(q^r)"),
    ("α1", "p", "p^1"),
    ("α2", "p^q", "q"),
    ("β0", "p", "p^p"),
    ("β1", "p^q", "q^p"),
    ("β2", "((p^q)^r)^s", "(p^(q^r))^s"),
])
def test_primitive_rules(prim, src, dst):
    assert apply_prim(prim, W(src)) == W(dst)


def test_primitive_mismatch():
    with pytest.raises(MatchFailure):
        apply_prim("α0", W("p^(q^r)"))


def test_rightmost_part_applies_first():
    g = cexpr("α2", "α0")
    assert chain(g, W("(p^q)^r")) == [W("(p^q)^r"), W("p^(q^r)"), W("q^r")]
    c = apply_cexpr(g, cert("(p^q)^r"))
    assert c.applied == ("α0", "α2")
    assert c.replay(W("(p^q)^r")) == c.condition


def test_ascii_primitive_names():
    assert cexpr("a0", "b1").flat() == ("α0", "β1")
    with pytest.raises(KeyError):
        cexpr("α9")


def test_witness_checker_rejects_wrong_target():
    assert witnesses(cexpr("β1"), W("p^q"), W("q^p"))
    assert not witnesses(cexpr("β1"), W("p^q"), W("p^q"))
    assert not witnesses(cexpr("α0"), W("p"), W("p"))


@pytest.mark.parametrize("name", sorted(derived_table()))
def test_derived_expressions_have_their_types(name):
    specs = {"β′0": ("p^q", "(p^q)^q"), "β′1": ("(p^q)^r", "(q^p)^r"),
             "β′2": ("p^(q^r)", "(p^q)^r"), "β3": ("p^(q^r)", "p^(r^q)"),
             "β′3": ("(p^(q^r))^s", "(p^(r^q))^s")}
    a, b = specs[name]
    assert witnesses(derived_table()[name], W(a), W(b))


@pytest.mark.parametrize("name", sorted(gamma_table()))
def test_gamma_table(name):
    a, b = spec_of(name)
    assert witnesses(gamma_table()[name], a, b)


def test_synthesis_handles_constants_and_repeats():
    for a, b in [("p", "1"), ("p^p", "p"), ("(p^1)^q", "q^(1^p)"), ("p^(q^r)", "r^(r^p)")]:
        assert witnesses(synth(a, b), W(a), W(b))


def test_synthesis_needs_variables_of_target():
    with pytest.raises(ValueError):
        synth("p", "q")


def test_vars():
    assert wvars(W("(p^1)^q")) == {"p", "q"}


def test_lift_moves_certificate_through_gamma():
    # γ̄ ⋆ ξ·π^τ ≻ ξ ⋆ π^{γτ}
    g = synth("p^q", "q^p")
    xi, tau, a = Const("ξ"), Const("τ"), Const("a")
    start = Process(lift(g), Stack((xi, a, tau)))
    assert reaches(start, Process(xi, Stack((a, spine_term(g, tau)))))


def test_random_synthesis_sample():
    rng = rng_for("wedge-unit")
    for _ in range(100):
        names = rng.sample(["p", "q", "r"], rng.randint(1, 3))
        t = names[0]
        for n in names[1:]:
            t = f"({t})^{n}" if rng.random() < 0.5 else f"{n}^({t})"
        u = rng.choice(names)
        if rng.random() < 0.5:
            u = f"{u}^{rng.choice(names)}"
        assert witnesses(synth(t, u), W(t), W(u))
