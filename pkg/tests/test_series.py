"""Truncated power series: certified valuations and precision tracking."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from curvepencil import INFINITY, PowerSeries, Tower
from curvepencil.series import Inconclusive

from conftest import series


def test_valuation_certification(tower):
    assert series(tower, {3: 1, 5: 2}).valuation() == 3
    assert series(tower, {}).valuation() == INFINITY
    # all shown coefficients zero but the series is truncated: no answer
    v = series(tower, {}, prec=10).valuation()
    assert isinstance(v, Inconclusive)
    # known term below the cutoff still certifies
    assert series(tower, {4: 7}, prec=10).valuation() == 4


def test_addition_precision(tower):
    a = series(tower, {2: 1}, prec=6)
    b = series(tower, {5: 1, 8: 1})
    s = a + b
    assert s.prec == 6
    assert s.coefficient(5).as_fraction() == 1
    assert 8 not in s.terms


def test_multiplication_precision_uses_valuations(tower):
    a = series(tower, {3: 1}, prec=7)
    b = series(tower, {2: 1, 4: -1})
    p = a * b
    # prec(a) + val(b) = 7 + 2
    assert p.prec == 9
    assert p.coefficient(5).as_fraction() == 1
    assert p.coefficient(7).as_fraction() == -1


def test_cancellation_keeps_exactness(tower):
    a = series(tower, {1: 1, 3: 2})
    b = series(tower, {1: 1})
    d = a - b
    assert d.exact
    assert d.valuation() == 3


def test_shift_dilate_deflate(tower):
    a = series(tower, {2: 1, 5: -3})
    assert a.shift(4).support() == [6, 9]
    assert a.dilate(3).support() == [6, 15]
    assert a.dilate(3).deflate(3) == a
    sd = a.scale_dilate(tower.rational(2), 1)
    assert sd.coefficient(2).as_fraction() == 4
    assert sd.coefficient(5).as_fraction() == -3 * 32


def test_compose(tower):
    # (t + t^2) o (t^2) = t^2 + t^4
    outer = series(tower, {1: 1, 2: 1})
    inner = series(tower, {2: 1})
    assert outer.compose(inner).support() == [2, 4]
    # truncated inner limits the result
    inner_t = series(tower, {2: 1}, prec=5)
    c = outer.compose(inner_t)
    assert c.prec is not None and c.prec >= 5


def test_invert_unit(tower):
    u = series(tower, {0: 1, 1: -1})  # 1 - t
    inv = u.invert_unit(6)
    prod = u * inv
    for e in range(6):
        expected = 1 if e == 0 else 0
        assert prod.coefficient(e).as_fraction() == expected


def test_nth_root_unit(tower):
    u = series(tower, {0: 1, 1: 1})  # 1 + t
    r = u.nth_root_unit(2, 8)
    sq = (r * r).truncate(8)
    assert sq == u.truncate(8)
    assert r.coefficient(1).as_fraction() == Fraction(1, 2)


coeffs = st.dictionaries(st.integers(min_value=0, max_value=12),
                         st.integers(min_value=-5, max_value=5),
                         max_size=4)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_ring_axioms(da, db, dc):
    t = Tower()
    a = series(t, da)
    b = series(t, db)
    c = series(t, dc)
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, st.integers(min_value=1, max_value=15))
def test_truncation_is_coherent_with_product(da, db, prec):
    t = Tower()
    a = series(t, da)
    b = series(t, db)
    full = (a * b).truncate(prec)
    trunc = (a.truncate(prec) * b.truncate(prec)).truncate(prec)
    assert full.truncate(trunc.prec or prec) == trunc.truncate(full.prec
                                                               or prec)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_valuation_of_product_adds(da, db):
    t = Tower()
    a = series(t, da)
    b = series(t, db)
    va, vb = a.valuation(), b.valuation()
    vp = (a * b).valuation()
    if va == INFINITY or vb == INFINITY:
        assert vp == INFINITY
    else:
        assert vp == va + vb
