import pytest

from realizab import logic as L
from realizab.machine import Process, reaches
from realizab.terms import Const, Stack

F = L.parse_formula


@pytest.mark.parametrize("text", [
    "forall x(X(x) -> r(x) |-> Y)",
    "forall2 X/1 X(x)",
    "x = y |-> A",
    "C[p^q] -> A",
    "n eps p -> bot",
])
def test_ascii_print_roundtrip(text):
    f = F(text)
    assert L.formula_eq(F(L.print_formula(f, ascii=True)), f)


@pytest.mark.parametrize("text", ["X(x", "forall X(x)", "x eps", "r(x)"])
def test_syntax_errors(text):
    with pytest.raises(L.FormulaSyntaxError):
        F(text)


def test_derived_connectives():
    assert L.print_formula(L.neg(F("A"))) == "A → ⊥"
    assert L.print_formula(F("exists x X(x)")) == "∀x(X(x) → ⊥) → ⊥"


def test_alpha_equivalence():
    assert L.formula_eq(F("forall x X(x)"), F("forall y X(y)"))
    assert not L.formula_eq(F("forall x X(x)"), F("forall y X(z)"))


def test_individual_substitution_renames_binder():
    f = L.subst_ind(F("forall y (r(x, y) -> Z)"), "x", L.IVar("y"))
    assert L.print_formula(f) == "∀y1(r(y, y1) → Z)"


def test_predicate_substitution_and_arity():
    f = L.subst_pred(F("X(a) -> X(b)"), "X", 1, F("r(y) -> Y"), ("y",))
    assert L.print_formula(f) == "(r(a) → Y) → r(b) → Y"
    with pytest.raises(L.ArityError):
        L.subst_pred(F("X(a, b)"), "X", 1, F("Y"), ("y",))


def test_forcing_twice_is_refused():
    once = L.force("p", F("X(x)"))
    with pytest.raises(L.ForcingError):
        L.force("p", once)


def test_forcing_avoids_capturing_the_condition():
    f = L.force("q", F("A -> B"))
    assert L.print_formula(f) == "∀q1(∀q(C[q1∧q] → A⁺(q)) → ∀q2(C[(q∧q1)∧q2] → B⁺(q2)))"
    assert L.free_ivars(f) == {"q"}


def test_propositional_structure():
    assert L.print_ps(L.prop_structure(F("(A -> B) -> r(x) -> C"))) == "(O→O)→O→O"
    assert L.prop_structure(F("forall x forall2 X/1 X(x)")) == L.O


def test_chi_on_atoms_is_rd_wr():
    chi, chip = L.synth_chi(F("X(x)"))
    assert (str(chi.name), str(chip.name)) == ("rd", "wr")


def test_chi_depends_only_on_structure():
    assert L.synth_chi(F("A -> B")) == L.synth_chi(F("r(x) -> forall y Z(y)"))
    assert L.synth_chi(F("A -> B")) != L.synth_chi(F("(A -> B) -> C"))


def test_delta_needs_first_order():
    with pytest.raises(L.NotFirstOrder):
        L.synth_delta(F("forall2 X/1 X(x)"))
    delta, delta_p = L.synth_delta(F("r(x) -> x eps y"))
    assert delta is not None and delta_p is not None


def test_nd_weakening_realizer_runs():
    d, ctx, _ = L.example_derivations()["weakening"]
    j = L.nd_check(d, ctx)
    a, b = Const("a"), Const("b")
    assert reaches(Process(j.compiled(), Stack((a, b))), Process(a, Stack()))


@pytest.mark.parametrize("name", [n for n in L.example_derivations() if n.startswith("bad-")])
def test_nd_rejects_mutations(name):
    d, ctx, should = L.example_derivations()[name]
    assert not should
    with pytest.raises(L.NDError):
        L.nd_check(d, ctx)


def test_judgment_text():
    d, ctx, _ = L.example_derivations()["weakening"]
    assert str(L.nd_check(d, ctx)).startswith("⊢ ")
