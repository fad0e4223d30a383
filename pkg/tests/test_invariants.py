"""Semigroups and characteristic exponents from pencil orders."""

import random
from fractions import Fraction
from math import gcd as igcd

import pytest

from curvepencil import (InconsistentDegree, Morphism, PencilSequence,
                         semigroup_from_pencil, semigroup_from_quotients)

from conftest import branch, reference_pair, random_branch, xy


def pencil(tower, gamma, morphism=None, k=1, prec=200):
    if morphism is None:
        x, y = xy(tower)
        morphism = Morphism(tower, x, y)
    return PencilSequence(morphism, gamma, k=k, prec=prec)


def test_cusp_semigroup(tower):
    sem = semigroup_from_pencil(pencil(tower, branch(tower, {2: 1}, {3: 1})))
    assert sem.generators == [2, 3]
    assert sem.char_exponents == [2, 3]
    assert sem.multiplicity == 2
    assert sem.e == [2, 1]


def test_two_pair_semigroup(tower):
    gamma = branch(tower, {4: 1}, {6: 1, 7: 1})
    sem = semigroup_from_pencil(pencil(tower, gamma))
    assert sem.generators == [4, 6, 13]
    assert sem.char_exponents == [4, 6, 7]
    assert sem.e == [4, 2, 1]
    assert sem.d == [2, 2]


def test_three_pair_semigroup(tower):
    gamma = branch(tower, {8: 1}, {12: 1, 14: 1, 15: 1})
    sem = semigroup_from_pencil(pencil(tower, gamma))
    assert sem.char_exponents == [8, 12, 14, 15]
    assert sem.generators == [8, 12, 26, 53]


def test_reference_branch_semigroup(tower):
    gamma, _ = reference_pair(tower)
    sem = semigroup_from_pencil(pencil(tower, gamma))
    assert sem.generators == [2, 3]


def quotients_from_orders(orders):
    """Hironaka quotients r_i = mu_i / nu_i recovered from orders alone."""
    nu = orders[0]
    out = []
    for mu in orders[1:]:
        r = Fraction(mu, nu)
        out.append(r)
        nu *= r.numerator
    return out


def test_quotient_route_matches_order_route(tower):
    rng = random.Random(7)
    for _ in range(25):
        gamma = random_branch(tower, rng)
        seq = pencil(tower, gamma, prec=200)
        sem = semigroup_from_pencil(seq)
        if sem.axis:
            continue
        qs = quotients_from_orders(sem.orders)
        m = semigroup_from_quotients(seq.mu_init, qs, seq.k)
        assert m == sem.m


def test_quotient_route_reference_values():
    qs = [Fraction(3, 2), Fraction(3, 2), Fraction(7, 6), Fraction(43, 42)]
    assert semigroup_from_quotients(2, qs) == [2, 3, 9, 12, 15]


def test_semigroup_elements(tower):
    sem = semigroup_from_pencil(pencil(tower, branch(tower, {2: 1}, {3: 1})))
    assert sem.semigroup_elements(8) == [0, 2, 3, 4, 5, 6, 7]


def test_inconsistent_degree_detected(tower):
    # claiming k=2 for a primitive branch makes mu_0 = 3 indivisible
    with pytest.raises(InconsistentDegree):
        semigroup_from_pencil(
            pencil(tower, branch(tower, {2: 1}, {3: 1}), k=2)
        )


def test_conjugation_invariance(tower):
    # replacing t by -t changes nothing topological
    a = branch(tower, {2: 1}, {3: 1, 6: Fraction(1, 2)})
    b = branch(tower, {2: 1}, {3: -1, 6: Fraction(1, 2)})
    sa = semigroup_from_pencil(pencil(tower, a))
    sb = semigroup_from_pencil(pencil(tower, b))
    assert sa.generators == sb.generators
    assert sa.char_exponents == sb.char_exponents


def test_characteristic_exponent_gcd_chain(tower):
    rng = random.Random(11)
    for _ in range(20):
        gamma = random_branch(tower, rng, max_exp=8)
        sem = semigroup_from_pencil(pencil(tower, gamma, prec=200))
        if sem.axis:
            continue
        # gcd of the characteristic exponents descends to 1
        g = 0
        for c in sem.char_exponents:
            g = igcd(g, c)
        assert g == 1
        assert sem.e[-1] == 1
        assert sem.generators[0] == sem.multiplicity
