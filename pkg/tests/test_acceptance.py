"""Acceptance gate: end-to-end checks of every advertised guarantee.

Each test covers one numbered criterion and prints a single PASS/FAIL
line so the gate can be read off the run log directly.
"""

import random
from fractions import Fraction
from math import gcd as igcd

import pytest

from curvepencil import (INFINITY, FibreBranchesRequired, ImagesEqual,
                         Morphism, MultiPoly, PencilSequence, PlaneParam,
                         Tower, direct_image, intersection_brute, ord_along,
                         pair_intersection, plane_intersection,
                         puiseux_branches, semigroup_from_param,
                         semigroup_from_pencil, semigroup_from_quotients)
from curvepencil.curves import implicit_equation_exact
from curvepencil.discriminant import discriminant_topology
from curvepencil.invariants import SemigroupData
from curvepencil.multibranch import branch_image_data, covering_degree
from curvepencil.oracle import curve_intersection
from curvepencil import multipoly as M

from conftest import branch, reference_pair, random_branch, xy


def _gate(number: int, description: str, body):
    try:
        body()
    except BaseException:
        print(f"[criterion {number}] FAIL - {description}")
        raise
    print(f"[criterion {number}] PASS - {description}")


# -- 1: reference example end to end ----------------------------------------

def test_criterion_1_reference_example():
    def body():
        tower = Tower()
        x, y = xy(tower)
        identity = Morphism(tower, x, y)
        d, dp = reference_pair(tower)

        seq = PencilSequence(identity, d, prec=600)
        seq.ensure_level(4)
        qs = seq.quotients()
        assert qs[:3] == [Fraction(3, 2), Fraction(3, 2), Fraction(7, 6)]
        assert semigroup_from_quotients(2, qs[:4]) == [2, 3, 9, 12, 15]
        assert seq.member(1) == y ** 2 - x ** 3
        assert seq.member(2) == (y ** 2 - x ** 3) ** 2 - x ** 9
        assert seq.steps[2].a.as_fraction() == Fraction(1, 64)

        img_d = direct_image(identity, d, 64)
        img_dp = direct_image(identity, dp, 64)
        zetas = puiseux_branches(seq.member(2), tower, 64)
        assert len(zetas) == 2
        vals_d = []
        vals_dp = []
        for z in zetas:
            zp = PlaneParam(tower, c=tower.one, p=z.exponent, yser=z.yser)
            vals_d.append(plane_intersection(img_d, zp))
            vals_dp.append(plane_intersection(img_dp, zp))
        assert sorted(vals_d) == [9, 12]
        # swapped roles for the second branch
        assert vals_dp == list(reversed(vals_d))

        value, witness = pair_intersection(identity, d, dp)
        assert value == 9
        assert witness.level == 2

    _gate(1, "reference pair: quotients, members, fibres, value 9", body)


# -- 2: projection formula ---------------------------------------------------

def _random_germ(tower, rng, x, y):
    """A random curve germ through the origin, as a small product.

    The total y-degree stays at most 4 so splitting fields stay small.
    """
    c = rng.choice([1, -1, 2, -3])
    a = rng.randint(1, 3)
    b = rng.randint(1, 3)
    kind = rng.randint(0, 2)
    if kind == 0:
        h = y ** a - (x ** b).scale(c)
    elif kind == 1:
        h = x ** a + (x * y).scale(c)
    else:
        h = y ** a + (x ** b * y).scale(c)
    if rng.random() < 0.5:
        c2 = rng.choice([1, -1, 2])
        h = h * (y - (x ** rng.randint(1, 3)).scale(c2))
    return h


def test_criterion_2_projection_formula():
    def body():
        rng = random.Random(42)
        done = 0
        while done < 200:
            # fresh tower per run: adjoined roots never leak across cases
            tower = Tower()
            x, y = xy(tower)
            morphisms = [
                Morphism(tower, x, y),
                Morphism(tower, y, x),
                Morphism(tower, x ** 2, y),
                Morphism(tower, x, y ** 2),
                Morphism(tower, x + y, x - y),
                Morphism(tower, x, y + x ** 2),
            ]
            gamma = random_branch(tower, rng, max_p=3, max_terms=2,
                                  max_exp=6)
            phi = rng.choice(morphisms)
            h = _random_germ(tower, rng, x, y)
            F, G = phi.on_branch(gamma)
            lhs = h.eval_series([F, G]).valuation()
            image, k = covering_degree(phi, gamma, 64)
            rhs = curve_intersection(h, image, prec=64)
            if rhs == INFINITY:
                assert lhs == INFINITY
            else:
                assert lhs == k * rhs
            done += 1

    _gate(2, "ord of pullback equals k times image intersection, 200 runs",
          body)


# -- 3: theorem route vs brute force -----------------------------------------

def test_criterion_3_pair_values_match_oracle():
    def body():
        tower = Tower()
        x, y = xy(tower)
        identity = Morphism(tower, x, y)

        # derived reference cases, fixed values
        fixed = [
            (identity, branch(tower, {2: 1}, {3: 1}),
             branch(tower, {3: 1}, {4: 1}), 8),
            (Morphism(tower, x, y ** 3 - (x ** 2 * y).scale(3)),
             branch(tower, {1: 1}, {1: 1}),
             branch(tower, {1: 1}, {1: -1}), 3),
            (identity, branch(tower, {1: 1}, {2: 1}),
             branch(tower, {1: 1}, {3: 1}), 2),
            (identity, branch(tower, {1: 1}, {2: 1}),
             branch(tower, {2: 1}, {1: 1}), 1),
        ]
        for phi, g1, g2, expected in fixed:
            value, _ = pair_intersection(phi, g1, g2)
            assert value == expected
            d1, _, _ = branch_image_data(phi, g1)
            d2, _, _ = branch_image_data(phi, g2)
            assert intersection_brute(d1, d2).value == expected

        rng = random.Random(5)
        done = 0
        while done < 100:
            fresh = Tower()
            ident = Morphism(fresh, *xy(fresh))
            g1 = random_branch(fresh, rng, max_p=3, max_terms=2, max_exp=6)
            g2 = random_branch(fresh, rng, max_p=3, max_terms=2, max_exp=6)
            try:
                value, _ = pair_intersection(ident, g1, g2)
            except ImagesEqual:
                continue
            d1, _, _ = branch_image_data(ident, g1)
            d2, _, _ = branch_image_data(ident, g2)
            assert value == intersection_brute(d1, d2).value
            done += 1

    _gate(3, "pair intersections equal brute force on 100+ pairs", body)


# -- 4: three semigroup routes agree -----------------------------------------

def _quotients_from_orders(orders):
    nu = orders[0]
    out = []
    for mu in orders[1:]:
        r = Fraction(mu, nu)
        out.append(r)
        nu *= r.numerator
    return out


def test_criterion_4_semigroup_routes_agree():
    def body():
        tower = Tower()
        x, y = xy(tower)
        identity = Morphism(tower, x, y)
        rng = random.Random(9)
        corpora = [random_branch(tower, rng, max_exp=8) for _ in range(100)]
        for gamma in corpora:
            seq = PencilSequence(identity, gamma, prec=200)
            sem = semigroup_from_pencil(seq)
            m = semigroup_from_quotients(
                seq.mu_init, _quotients_from_orders(sem.orders), seq.k)
            assert m == sem.m
            delta, _ = covering_degree(identity, gamma, 64)
            oracle = semigroup_from_param(delta)
            assert oracle.generators == sem.generators
            assert oracle.char_exponents == sem.char_exponents
        # discriminant examples get the same triple agreement
        for g in (y ** 3 - (x * y).scale(3), y ** 3 - (x ** 2 * y).scale(3)):
            rep = discriminant_topology(Morphism(tower, x, g))
            for b in rep.branches:
                oracle = semigroup_from_param(b.image)
                assert oracle.generators == b.semigroup.generators

    _gate(4, "pencil, quotient, and support semigroup routes agree, 100+ "
             "branches", body)


# -- 5: first-step closed form ------------------------------------------------

def test_criterion_5_transversal_min_formula():
    def body():
        tower = Tower()
        x, y = xy(tower)
        identity = Morphism(tower, x, y)
        rng = random.Random(14)
        done = 0
        while done < 40:
            g1 = random_branch(tower, rng, max_p=3, max_terms=2, max_exp=6)
            g2 = random_branch(tower, rng, max_p=3, max_terms=2, max_exp=6)
            d1, _, _ = branch_image_data(identity, g1)
            d2, _, _ = branch_image_data(identity, g2)
            p1, v1 = d1.p, d1.yser.valuation()
            p2, v2 = d2.p, d2.yser.valuation()
            if v1 == INFINITY or v2 == INFINITY:
                continue
            # only pairs whose first quotients already differ
            if Fraction(v1, p1) == Fraction(v2, p2):
                continue
            value, witness = pair_intersection(identity, g1, g2)
            assert witness.level == 0
            assert value == min(p1 * v2, v1 * p2)
            done += 1

    _gate(5, "level-0 separations match min{I(d,x)I(d',y), I(d,y)I(d',x)}",
          body)


# -- 6: discriminant pipeline --------------------------------------------------

def test_criterion_6_discriminant_examples():
    def body():
        tower = Tower()
        x, y = xy(tower)

        rep = discriminant_topology(Morphism(tower, x,
                                             y ** 3 - (x * y).scale(3)))
        assert len(rep.branches) == 1
        assert rep.branches[0].semigroup.generators == [2, 3]
        img = rep.branches[0].image
        X, Y = img.param()
        F, k = implicit_equation_exact(X, Y, tower)
        assert k == 1
        assert M.from_ylist(tower, F) == y ** 2 - (x ** 3).scale(4)

        rep2 = discriminant_topology(Morphism(tower, x,
                                              y ** 3 - (x ** 2 * y).scale(3)))
        assert len(rep2.branches) == 2
        assert all(b.semigroup.generators == [1] for b in rep2.branches)
        assert rep2.pairs[("c1", "c2")].value == 3

        rep3 = discriminant_topology(Morphism(tower, x, y ** 2))
        assert rep3.branches == []

    _gate(6, "discriminant examples: cusp with y^2 = 4x^3, pair value 3, "
             "empty case", body)


# -- 7: pencil structural invariants -------------------------------------------

def test_criterion_7_pencil_invariants():
    def body():
        tower = Tower()
        x, y = xy(tower)
        cases = []
        rng = random.Random(21)
        identity = Morphism(tower, x, y)
        for _ in range(60):
            cases.append((identity, random_branch(tower, rng, max_exp=8), 1))
        doubling = Morphism(tower, x ** 2, y)
        cases.append((doubling, branch(tower, {2: 1}, {6: 1}), 2))
        cases.append((doubling, branch(tower, {2: 1}, {6: 1, 7: 1}), 2))
        for phi, gamma, k in cases:
            seq = PencilSequence(phi, gamma, k=k, prec=200)
            semigroup_from_pencil(seq)
            if seq.termination == "axis":
                continue
            # quotients strictly above 1 past the zeroth step
            for s in seq.steps[1:]:
                assert Fraction(s.q, s.p) > 1
            # gcd chain weakly decreasing, always a multiple of k
            eps = seq.mu_init
            prev = eps
            for mu in seq.mus:
                eps = igcd(eps, mu)
                assert eps <= prev
                assert eps % k == 0
                prev = eps
            # non-special members take the generic (minimal) order
            for i, s in enumerate(seq.steps):
                seq.member(i)
                f_i, g_i = seq._members[i]
                generic = (g_i ** s.p
                           - (f_i ** s.q).scale(s.a + phi.tower.one))
                assert ord_along(generic, gamma) == s.p * s.mu

    _gate(7, "quotients above 1, monotone gcd chain, generic member orders",
          body)


# -- 8: robustness ---------------------------------------------------------------

def test_criterion_8_robustness():
    def body():
        tower = Tower()
        identity = Morphism(tower, *xy(tower))
        a = branch(tower, {2: 1}, {3: 1, 6: Fraction(1, 2)})
        twin = branch(tower, {2: 1}, {3: -1, 6: Fraction(1, 2)})
        with pytest.raises(ImagesEqual):
            pair_intersection(identity, a, twin)

        u = MultiPoly.variable(tower, 3, 0)
        v = MultiPoly.variable(tower, 3, 1)
        proj = Morphism(tower, u, v)
        d3 = branch(tower, {2: 1}, {3: 1, 6: Fraction(1, 2)}, {})
        dp3 = branch(tower, {2: 1}, {3: 1, 6: Fraction(-1, 2)}, {})
        with pytest.raises(FibreBranchesRequired) as err:
            pair_intersection(proj, d3, dp3)
        assert err.value.level == 0
        # supply levels 0 and 1 only: the failure names the next level
        fib = {
            0: [branch(tower, {1: 1}, {}, {})],
            1: [branch(tower, {2: 1}, {3: 1}, {})],
        }
        with pytest.raises(FibreBranchesRequired) as err:
            pair_intersection(proj, d3, dp3, fibre_branches=fib)
        assert err.value.level == 2
        # the same pair on a plane source resolves at that level
        plane = Morphism(tower, *xy(tower))
        d2, dp2 = reference_pair(tower)
        value, witness = pair_intersection(plane, d2, dp2)
        assert value == 9 and witness.level == 2

    _gate(8, "equal images and missing fibre branches fail with precise "
             "errors", body)
