import pytest

from realizab import balgebra
from realizab.arith import numeral
from realizab.terms import App, Atom, Const, Num, parse_cterm
from realizab.wedge import ONE, Wedge, parse_wedge


def test_translation_of_atoms_has_unit_condition():
    b = balgebra.translate(Atom("K"))
    assert b.term == balgebra.star_table()["K"]
    assert b.condition == ONE


def test_translation_condition_follows_application_tree():
    t = parse_cterm("(B) K I")
    assert balgebra.translate(t).condition == balgebra.one_of(t)
    assert balgebra.one_of(t) == Wedge(Wedge(ONE, ONE), ONE)


def test_numeral_literal_translates_like_its_tower():
    assert balgebra.translate(Num(2)) == balgebra.translate(numeral(2))


@pytest.mark.parametrize("t", [Const("a"), Atom("qt"), App(Atom("rd"), Atom("I"))])
def test_outside_fragment(t):
    with pytest.raises(balgebra.TranslationError):
        balgebra.translate(t)


@pytest.mark.parametrize("rule", balgebra.LIFTED_RULES)
def test_lifted_rule_replays(rule):
    rep = balgebra.b_step_check(rule)
    assert rep.ok, "\n".join(rep.lines())
    assert all(ok for _, _, ok in rep.stages)


def test_w_case_ends_at_duplicated_condition():
    _, _, stages = balgebra.lifted_rule_cases()["W"]
    assert stages[-1][4] == parse_wedge("p^(q^(q^s))")


def test_unknown_rule():
    with pytest.raises(KeyError):
        balgebra.b_step_check("qt")


@pytest.mark.parametrize("n", [0, 1, 3])
def test_model_integers(n):
    for check in (balgebra.check_g, balgebra.check_j, balgebra.check_S):
        assert check(n).ok


def test_model_storage_and_helpers():
    assert balgebra.check_T().ok
    assert balgebra.check_gamma_lift().ok
    assert balgebra.check_alpha0_lift().ok


def test_report_lines():
    lines = list(balgebra.b_step_check("I").lines())
    assert lines[0].startswith("lifted-I: PASS")
