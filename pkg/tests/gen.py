"""Seeded random generators shared by the property tests."""

import random

from realizab.terms import App, Atom, Lam, Var

ATOMS = [Atom(n) for n in ("I", "K", "E", "W", "C", "B")]


def random_cterm(rng, depth, names):
    """A c-term over the names and the pure combinators."""
    if depth == 0 or rng.random() < 0.3:
        if names and rng.random() < 0.6:
            return Var(rng.choice(names))
        return rng.choice(ATOMS)
    return App(random_cterm(rng, depth - 1, names), random_cterm(rng, depth - 1, names))


def random_lterm(rng, depth, free, bound=()):
    """A lambda-term whose free variables are among ``free``."""
    names = list(free) + list(bound)
    r = rng.random()
    if depth == 0 or r < 0.25:
        if names and rng.random() < 0.7:
            return Var(rng.choice(names))
        return rng.choice(ATOMS)
    if r < 0.45:
        v = rng.choice(["x", "y", "z", "u", "v"])
        return Lam(v, random_lterm(rng, depth - 1, free, tuple(bound) + (v,)))
    return App(random_lterm(rng, depth - 1, free, bound), random_lterm(rng, depth - 1, free, bound))


def rng_for(tag, seed=0):
    return random.Random(f"{tag}:{seed}")
