import random

import pytest

from realizab import pole
from realizab.machine import Process
from realizab.terms import Atom, Const, Stack


@pytest.fixture(scope="module")
def universe():
    return pole.Universe.sample(7)


def test_universe_sampling_is_seeded():
    a, b = pole.Universe.sample(3), pole.Universe.sample(3)
    assert (a.S, a.targets, a.pool, a.relations) == (b.S, b.targets, b.pool, b.relations)


def test_pole_is_closed_under_anti_reduction(universe):
    for target in universe.targets:
        assert universe.in_pole(target)
        # I ⋆ ξ·π reduces to a target, so it is in the pole too
        assert universe.in_pole(Process(Atom("I"), target.stack.push(target.head)))


def test_identity_realizes_every_x_to_x(universe):
    v = pole.falsify(Atom("I"), "X -> X", universe, trials=50, rng=random.Random(1))
    assert v.ok and v.trials == 50


def test_k_is_not_a_peirce_realizer():
    found = False
    for seed in range(20):
        u = pole.Universe.sample(seed)
        v = pole.falsify(Atom("K"), pole.PEIRCE, u, trials=100, rng=random.Random(seed))
        if not v.ok:
            found = True
            assert v.witness is not None and "counterexample" in str(v)
            break
    assert found


@pytest.mark.parametrize("name,xi,formula", pole.law_cases())
def test_laws_hold_on_a_few_universes(name, xi, formula):
    for seed in range(5):
        u = pole.Universe.sample(seed)
        assert pole.falsify(xi, formula, u, trials=40, rng=random.Random(seed)).ok, name


def test_continuation_and_negation_laws(universe):
    assert pole.check_continuation_law(universe, 40, random.Random(0)).ok
    assert pole.check_negation_law(universe, "i", 40, random.Random(0)).ok
    assert pole.check_negation_law(universe, "ii", 40, random.Random(0)).ok


def test_run_laws_reports():
    reports = pole.run_laws(universes=3, trials=10, seed=1)
    assert set(reports) >= {"peirce-cc", "continuation", "neg-intro", "neg-elim"}
    for r in reports.values():
        assert r.ok and r.universes == 3
        assert r.line().startswith(f"{r.name}\tok")
    broken = pole.run_laws(universes=20, trials=100, seed=0, broken=True)
    assert not broken["peirce-broken-K"].ok


def test_small_stacks_are_distinct():
    stacks = pole.small_stacks()
    assert len(stacks) == len(set(stacks))
    assert Stack((), "π0") in stacks and Stack((Const("a"),), "π1") in stacks


def test_reports_do_not_depend_on_hash_seed():
    import os
    import subprocess
    import sys
    code = ("from realizab import pole\n"
            "r = pole.run_laws(universes=4, trials=50, seed=0)\n"
            "print([x.line() for x in r.values()])")
    outs = set()
    for h in ("1", "2"):
        env = {**os.environ, "PYTHONHASHSEED": h}
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, check=True,
                                capture_output=True, text=True).stdout)
    assert len(outs) == 1
