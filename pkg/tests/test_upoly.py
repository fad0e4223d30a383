"""Univariate polynomials over a tower: gcd, resultant, factorisation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvepencil import Config, Tower
from curvepencil.errors import FactorDegreeExceeded
from curvepencil import upoly as U


def poly(tower, *coeffs):
    return U.normalize([tower.coerce(c) for c in coeffs])


def test_divmod_and_gcd(tower):
    # (x - 1)(x - 2) and (x - 1)(x + 3)
    a = poly(tower, 2, -3, 1)
    b = poly(tower, -3, 2, 1)
    q, r = U.divmod_poly(a, b)
    assert U.add(U.mul(q, b), r) == a
    g = U.gcd(a, b)
    assert U.monic(g) == poly(tower, -1, 1)


def test_resultant_matches_root_products(tower):
    # res((x-1)(x-2), (x-3)(x-4)) = (1-3)(1-4)(2-3)(2-4) = 12
    a = poly(tower, 2, -3, 1)
    b = poly(tower, 12, -7, 1)
    assert U.resultant(a, b).as_fraction() == 12


def test_resultant_zero_on_common_root(tower):
    a = poly(tower, -1, 0, 1)
    b = poly(tower, -1, 1)
    assert U.resultant(a, b).is_zero()


def test_valuation_x(tower):
    assert U.valuation_x(poly(tower, 0, 0, 3, 1)) == 2
    assert U.valuation_x(poly(tower, 5)) == 0


def test_factor_over_rationals(tower):
    # x^4 - 1 = (x-1)(x+1)(x^2+1), squarefree
    p = poly(tower, -1, 0, 0, 0, 1)
    factors = U.factor_squarefree(p, level=0)
    assert sorted(U.deg(f) for f in factors) == [1, 1, 2]
    prod = poly(tower, 1)
    for f in factors:
        prod = U.mul(prod, f)
    assert prod == p


def test_factor_over_extension():
    t = Tower()
    r = t.adjoin_root([t.rational(-2), t.zero, t.one])  # sqrt 2
    # x^2 - 2 splits over Q(sqrt2)
    p = [t.rational(-2).lift(1), t.zero.lift(1), t.one.lift(1)]
    factors = U.factor_squarefree(p)
    assert len(factors) == 2
    assert any((-f[0]) == r for f in factors)
    assert any((-f[0]) == -r for f in factors)


def test_roots_in_splitting_field(tower):
    # (x^2 - 2)(x - 3): adjoins sqrt2 as needed
    p = poly(tower, 6, -2, -3, 1)
    pairs = U.roots_in_splitting_field(p)
    assert len(pairs) == 3
    assert all(m == 1 for _, m in pairs)
    tw = pairs[0][0].tower
    for root, _ in pairs:
        assert U.evaluate([tw.coerce(c) for c in [6, -2, -3, 1]],
                          root).is_zero()


def test_squarefree_decomposition(tower):
    # x^2 (x - 1)^3
    p = U.mul(poly(tower, 0, 0, 1), poly(tower, -1, 3, -3, 1))
    p = U.mul(p, poly(tower, 1))
    dec = U.squarefree_decomposition(p)
    found = {m: U.monic(f) for f, m in dec if U.deg(f) > 0}
    assert found[2] == poly(tower, 0, 1)
    assert found[3] == poly(tower, -1, 1)
    assert not U.is_squarefree(p)
    assert U.is_squarefree(poly(tower, -1, 0, 1))


def test_factor_degree_bound(tower):
    cfg = Config(factor_degree_bound=3)
    p = poly(tower, -2, 0, 0, 0, 1)
    with pytest.raises(FactorDegreeExceeded):
        U.factor_squarefree(p, cfg)


def test_roots_of_unity(tower):
    roots = U.roots_of_unity(tower, 3)
    assert len(roots) == 3
    tw = roots[0].tower
    for z in roots:
        assert (z ** 3) == tw.one.lift(z.level)


small = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=4),
       st.lists(small, min_size=1, max_size=4))
def test_resultant_multiplicative_in_degrees(ca, cb):
    t = Tower()
    a = poly(t, *ca, 1)
    b = poly(t, *cb, 1)
    # res(a, b) = (-1)^(deg a * deg b) res(b, a) for monic a, b
    lhs = U.resultant(a, b)
    rhs = U.resultant(b, a)
    sign = -1 if (U.deg(a) * U.deg(b)) % 2 else 1
    assert lhs == rhs * t.rational(sign)
