import pytest

from gen import random_lterm, rng_for

from realizab.terms import (
    App, Atom, Const, Lam, ParseError, Var, alpha_eq, canonical, compile_term,
    eliminate_abstraction, free_vars, has_lambda, is_closed, lsubst, parse_cterm,
    parse_lterm, parse_stack, print_cterm, print_lterm, print_stack, spine,
)


def test_application_chains_to_the_left():
    t = parse_lterm("f a b")
    assert t == App(App(Var("f"), Var("a")), Var("b"))


def test_parenthesised_argument_swallows_rest_of_group():
    # (f)(n) f x reads as f applied to ((n f) x)
    t = parse_lterm(r"(f)(n) f x")
    assert t == App(Var("f"), App(App(Var("n"), Var("f")), Var("x")))


def test_lambda_binds_to_end_of_group():
    t = parse_lterm(r"\x \y (y) x")
    assert t == Lam("x", Lam("y", App(Var("y"), Var("x"))))


@pytest.mark.parametrize("text", [r"(f)(n) f x", r"\x \y (y) x", "(E) a b"])
def test_print_parse_roundtrip(text):
    t = parse_lterm(text)
    assert parse_lterm(print_lterm(t)) == t


def test_atoms_parse_in_cterm_mode():
    t = parse_cterm("(E) a b")
    assert spine(t) == (Atom("E"), [Const("a"), Const("b")])


def test_stack_syntax_and_base():
    s = parse_stack("a.b.pi1")
    assert s.items == (Const("a"), Const("b"))
    assert print_stack(s) == "a.b.pi1"


@pytest.mark.parametrize("text", ["(f a", r"\ x", "a ″ b", ""])
def test_malformed_input_is_rejected(text):
    with pytest.raises(ParseError):
        parse_lterm(text)


def test_identity_and_constant_abstractions():
    assert print_cterm(compile_term(parse_lterm(r"\x x"))) == "I"
    assert print_cterm(compile_term(parse_lterm(r"\x \y y"))) == "(K) I"


def test_abstraction_of_absent_variable_is_k():
    assert eliminate_abstraction("x", Const("a")) == App(Atom("K"), Const("a"))


def test_compiled_terms_have_no_lambdas():
    rng = rng_for("compile-total")
    for _ in range(200):
        t = random_lterm(rng, 6, ["a"])
        c = compile_term(t)
        assert not has_lambda(c)
        assert free_vars(c) == free_vars(t)


def test_closed_terms_compile_closed():
    assert is_closed(compile_term(parse_lterm(r"\f \x (f)(f) x")))


def test_canonical_names_are_alpha_invariant():
    a = parse_lterm(r"\u \v (v) u")
    b = parse_lterm(r"\x \y (y) x")
    assert canonical(a) == canonical(b)
    assert alpha_eq(a, b)


def test_lsubst_avoids_capture():
    t = lsubst(parse_lterm(r"\y (x) y"), "x", Var("y"))
    assert isinstance(t, Lam) and t.var != "y"
    assert free_vars(t) == {"y"}
