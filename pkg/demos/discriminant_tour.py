"""Discriminant curves of three small plane morphisms.

Run:  python3 demos/discriminant_tour.py
"""

from curvepencil import (Morphism, MultiPoly, Tower, critical_branches,
                         discriminant_topology)


def show(title, f, g, tower):
    print(f"\n== {title}: phi = ({f}, {g})")
    phi = Morphism(tower, f, g)
    crit = critical_branches(phi)
    print("jacobian:", crit.jacobian)
    for br, excluded, reason in crit.branches:
        flag = f"excluded ({reason})" if excluded else "kept"
        print("  critical branch:", br, "->", flag)
    report = discriminant_topology(phi)
    for b in report.branches:
        print(f"  image {b.name}: semigroup {b.semigroup.generators}, "
              f"exponents {b.semigroup.char_exponents}")
    for (a, b), entry in sorted(report.pairs.items()):
        if a < b and entry.kind == "value":
            print(f"  [{a}, {b}] = {entry.value}")


def main():
    tower = Tower()
    x = MultiPoly.variable(tower, 2, 0)
    y = MultiPoly.variable(tower, 2, 1)

    show("cuspidal discriminant", x, y ** 3 - (x * y).scale(3), tower)
    show("two smooth branches meeting with multiplicity 3",
         x, y ** 3 - (x ** 2 * y).scale(3), tower)
    show("empty discriminant (fold along the axis)", x, y ** 2, tower)


if __name__ == "__main__":
    main()
