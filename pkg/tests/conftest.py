"""Shared builders for towers, morphisms, branches, and random corpora."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from curvepencil import BranchParam, Morphism, MultiPoly, PlaneParam, Tower
from curvepencil.series import PowerSeries


def series(tower, terms, prec=None):
    return PowerSeries.from_terms(tower, terms, prec)


def branch(tower, *term_dicts):
    return BranchParam(tower, [series(tower, d) for d in term_dicts])


def plane_param(tower, p, terms, c=1):
    return PlaneParam(tower, c=tower.coerce(c), p=p,
                      yser=series(tower, terms))


def xy(tower):
    return (MultiPoly.variable(tower, 2, 0), MultiPoly.variable(tower, 2, 1))


def const(tower, v, nvars=2):
    return MultiPoly.constant(tower, nvars, v)


@pytest.fixture
def tower():
    return Tower()


@pytest.fixture
def identity(tower):
    x, y = xy(tower)
    return Morphism(tower, x, y)


def random_branch(tower, rng: random.Random, max_p: int = 4,
                  max_terms: int = 3, max_exp: int = 9) -> BranchParam:
    """A random exact branch (t^p, polynomial), passing through 0."""
    from math import gcd
    while True:
        p = rng.randint(1, max_p)
        terms = {}
        nterms = rng.randint(1, max_terms)
        lead = (rng.randint(p + 1, max_exp) if p > 1
                else rng.randint(1, max_exp))
        exps = sorted(rng.sample(range(lead, lead + 2 * max_exp), nterms))
        for e in exps:
            c = rng.choice([1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-3, 2)])
            terms[e] = c
        g = p
        for e in terms:
            g = gcd(g, e)
        if g == 1:  # keep the parametrization one-to-one
            return branch(tower, {p: 1}, terms)


def reference_pair(tower):
    """The two branches whose images intersect with multiplicity 9."""
    d = branch(tower, {2: 1}, {3: 1, 6: Fraction(1, 2)})
    dp = branch(tower, {2: 1}, {3: 1, 6: Fraction(-1, 2)})
    return d, dp
