import pytest

from realizab import corpus
from realizab.terms import Atom, Var


def test_every_entry_is_closed():
    cat = corpus.catalog()
    assert len(cat) >= 30
    assert all(e.closed for e in cat.values())


@pytest.mark.parametrize("alias,name", [("Y", "fixpoint"), ("T", "storage"),
                                        ("cp", "comparator"), ("σ", "successor")])
def test_aliases(alias, name):
    assert corpus.resolve(alias) == name


def test_unknown_entry():
    with pytest.raises(KeyError):
        corpus.resolve("no-such-term")


@pytest.mark.parametrize("name", ["fixpoint", "storage-step", "generic-not-one",
                                  "fixpoint-swap", "inclusion-meet", "decide-2"])
def test_claims_replay(name):
    results = corpus.replay(name)
    assert results
    assert all(r.ok for r in results), [r for r in results if not r.ok]


def test_report_is_tab_separated():
    lines = corpus.report(["fixpoint"])
    assert lines == ["fixpoint\tY ⋆ κ ≻ κ ⋆ Yκ\tpass\tsteps=47"]


def test_report_is_deterministic():
    names = ["density", "sequence-start"]
    assert corpus.report(names) == corpus.report(names)


def test_small_budget_is_reported_not_raised():
    results = corpus.replay("fixpoint", budget=5)
    assert [r.status for r in results] != ["pass"]
    assert not results[0].ok


def test_extraction_requires_closed_inputs():
    with pytest.raises(corpus.OpenTermError):
        corpus.build_extraction(Var("u"), Atom("I"), Atom("I"), Atom("I"), Atom("I"), Atom("I"))
