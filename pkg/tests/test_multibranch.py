"""Pairwise intersection of image branches via separating pencil levels."""

import random
from fractions import Fraction

import pytest

from curvepencil import (INFINITY, ImagesEqual, FibreBranchesRequired,
                         InputError, Morphism, Tower, pair_intersection,
                         plane_intersection, separation_level,
                         topology_report)
from curvepencil.multibranch import branch_image_data, covering_degree
from curvepencil.oracle import intersection_brute

from conftest import branch, reference_pair, random_branch, xy


def test_reference_pair_value_and_witness(tower, identity):
    d, dp = reference_pair(tower)
    value, witness = pair_intersection(identity, d, dp)
    assert value == 9
    assert witness.level == 2
    assert witness.ratio_first == 6
    assert witness.ratio_second == Fraction(9, 2)
    assert sorted([witness.candidate_first, witness.candidate_second]) \
        == [9, 12]
    assert witness.attained == "second"


def test_first_level_separation_uses_min_formula(tower, identity):
    a = branch(tower, {2: 1}, {3: 1})
    b = branch(tower, {3: 1}, {4: 1})
    value, witness = pair_intersection(identity, a, b)
    # min of 2*4 and 3*3 from contact with the axes
    assert value == 8
    assert witness.level == 0


def test_separation_with_infinite_ratio(tower):
    # g = y^3 - 3x^2 y: images of (t, t) and (t, -t) meet with mult 3
    x, y = xy(tower)
    phi = Morphism(tower, x, y ** 3 - (x ** 2 * y).scale(3))
    a = branch(tower, {1: 1}, {1: 1})
    b = branch(tower, {1: 1}, {1: -1})
    value, witness = pair_intersection(phi, a, b)
    assert value == 3
    assert witness.level == 1
    assert INFINITY in (witness.ratio_first, witness.ratio_second)


def test_mixed_orientation_pair(tower, identity):
    a = branch(tower, {1: 1}, {2: 1})
    b = branch(tower, {2: 1}, {1: 1})
    value, _ = pair_intersection(identity, a, b)
    assert value == 1


def test_matches_direct_plane_intersection():
    rng = random.Random(3)
    done = 0
    while done < 12:
        # fresh tower per pair: adjoined roots never leak across cases
        t = Tower()
        ident = Morphism(t, *xy(t))
        a = random_branch(t, rng, max_exp=8)
        b = random_branch(t, rng, max_exp=8)
        try:
            value, _ = pair_intersection(ident, a, b)
        except ImagesEqual:
            continue
        img_a, _ = covering_degree(ident, a, 64)
        img_b, _ = covering_degree(ident, b, 64)
        assert value == plane_intersection(img_a, img_b)
        done += 1


def test_equal_images_detected(tower, identity):
    a = branch(tower, {2: 1}, {3: 1, 6: Fraction(1, 2)})
    # t -> -t gives the same image germ
    b = branch(tower, {2: 1}, {3: -1, 6: Fraction(1, 2)})
    with pytest.raises(ImagesEqual):
        pair_intersection(identity, a, b)


def test_equal_images_through_morphism(tower):
    x, y = xy(tower)
    phi = Morphism(tower, x ** 2, y)
    a = branch(tower, {1: 1}, {6: 1})
    b = branch(tower, {1: 1}, {6: 1, 7: 0})
    with pytest.raises(ImagesEqual):
        pair_intersection(phi, a, b)


def test_separation_level_helper(tower, identity):
    d, dp = reference_pair(tower)
    witness = separation_level(identity, d, dp)
    assert witness.level == 2
    assert witness.witness_image is not None


def test_branch_image_data(tower, identity):
    d, _ = reference_pair(tower)
    image, k, sem = branch_image_data(identity, d)
    assert k == 1
    assert image.p == 2
    assert sem.generators == [2, 3]


def test_branch_image_data_with_covering(tower):
    x, y = xy(tower)
    phi = Morphism(tower, x ** 2, y)
    gamma = branch(tower, {2: 1}, {6: 1})
    image, k, sem = branch_image_data(phi, gamma)
    assert k == 2
    assert sem.generators == [2, 3]


def test_surface_source_requires_fibre_branches(tower):
    from curvepencil import MultiPoly
    u = MultiPoly.variable(tower, 3, 0)
    v = MultiPoly.variable(tower, 3, 1)
    phi = Morphism(tower, u, v)
    a = branch(tower, {2: 1}, {3: 1}, {5: 1})
    b = branch(tower, {3: 1}, {4: 1}, {7: 1})
    with pytest.raises(FibreBranchesRequired) as err:
        pair_intersection(phi, a, b)
    assert err.value.level == 0
    fib = {0: [branch(tower, {1: 1}, {}, {})]}
    value, witness = pair_intersection(phi, a, b, fibre_branches=fib)
    assert value == 8
    assert witness.level == 0


def test_surface_fibre_branch_must_lie_on_member(tower):
    from curvepencil import MultiPoly
    u = MultiPoly.variable(tower, 3, 0)
    v = MultiPoly.variable(tower, 3, 1)
    phi = Morphism(tower, u, v)
    a = branch(tower, {2: 1}, {3: 1}, {5: 1})
    b = branch(tower, {3: 1}, {4: 1}, {7: 1})
    bad = {0: [branch(tower, {1: 1}, {1: 1}, {})]}  # v does not vanish
    with pytest.raises(InputError):
        pair_intersection(phi, a, b, fibre_branches=bad)


def test_topology_report_classes_and_pairs(tower, identity):
    d, dp = reference_pair(tower)
    same = branch(tower, {2: 1}, {3: -1, 6: Fraction(1, 2)})
    rep = topology_report(identity, [("d", d), ("dp", dp), ("twin", same)])
    assert rep.pairs[("d", "dp")].value == 9
    assert rep.pairs[("dp", "d")].value == 9
    assert rep.pairs[("d", "d")].kind == "self"
    assert rep.pairs[("d", "twin")].kind == "equal"
    assert ["d", "twin"] in rep.classes
    names = [b.name for b in rep.branches]
    assert names == ["d", "dp", "twin"]
    for b in rep.branches:
        assert b.error is None
        assert b.semigroup.generators == [2, 3]


def test_topology_report_records_pair_errors(tower):
    x, y = xy(tower)
    phi = Morphism(tower, x, y)
    good = branch(tower, {2: 1}, {3: 1})
    vertical = branch(tower, {}, {1: 1})
    rep = topology_report(phi, [("g", good), ("v", vertical)])
    by_name = {b.name: b for b in rep.branches}
    assert by_name["g"].error is None
    # the vertical branch maps to the axis x = 0: still a valid image
    assert by_name["v"].image.axis == "x"
    # x has order 2 along the cusp
    assert rep.pairs[("g", "v")].value == 2


def test_agrees_with_oracle_on_random_pairs():
    rng = random.Random(17)
    done = 0
    while done < 8:
        t = Tower()
        ident = Morphism(t, *xy(t))
        a = random_branch(t, rng, max_exp=7)
        b = random_branch(t, rng, max_exp=7)
        try:
            value, _ = pair_intersection(ident, a, b)
        except ImagesEqual:
            continue
        d1, _, _ = branch_image_data(ident, a)
        d2, _, _ = branch_image_data(ident, b)
        oracle = intersection_brute(d1, d2)
        assert value == oracle.value
        done += 1
