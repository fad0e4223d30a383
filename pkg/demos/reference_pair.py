"""Walk through the flagship computation: two branches whose images agree
to high order, separated only at pencil level 2.

Run:  python3 demos/reference_pair.py
"""

from fractions import Fraction

from curvepencil import (BranchParam, Morphism, MultiPoly, PencilSequence,
                         Tower, direct_image, pair_intersection,
                         semigroup_from_pencil)
from curvepencil.series import PowerSeries


def main():
    tower = Tower()
    x = MultiPoly.variable(tower, 2, 0)
    y = MultiPoly.variable(tower, 2, 1)
    identity = Morphism(tower, x, y)

    half = Fraction(1, 2)
    d = BranchParam(tower, [PowerSeries.from_terms(tower, {2: 1}),
                            PowerSeries.from_terms(tower, {3: 1, 6: half})])
    dp = BranchParam(tower, [PowerSeries.from_terms(tower, {2: 1}),
                             PowerSeries.from_terms(tower, {3: 1, 6: -half})])

    print("branches:")
    print("  d  =", d)
    print("  dp =", dp)

    seq = PencilSequence(identity, d, prec=200)
    seq.ensure_level(3)
    print("\npencil orders:", seq.all_orders())
    print("quotients:    ", [str(q) for q in seq.quotients()])
    print("g1 =", seq.member(1))
    print("g2 =", seq.member(2))
    print("a3 =", seq.steps[2].a)

    sem = semigroup_from_pencil(PencilSequence(identity, d, prec=200))
    print("\nsemigroup generators:", sem.generators)
    print("characteristic exponents:", sem.char_exponents)

    print("\nimage of d :", direct_image(identity, d, 24))
    print("image of dp:", direct_image(identity, dp, 24))

    value, witness = pair_intersection(identity, d, dp)
    print("\nintersection of the images:", value)
    print("separating level:", witness.level)
    print("contact ratios:", witness.ratio_first, "vs",
          witness.ratio_second)
    print("candidates:", witness.candidate_first, witness.candidate_second,
          "->", witness.attained)


if __name__ == "__main__":
    main()
