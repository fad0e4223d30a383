"""Curve branches, morphisms, direct images, and plane intersection numbers.

A source branch is a tuple of power series (one per ambient coordinate);
a plane morphism or a morphism from a surface germ pushes it forward to a
plane branch, which is normalised to the shape (c t^p, y(t)) with a pure
power of t as first coordinate.  On that shape the intersection
multiplicity of two branches is the sum, over conjugate parametrisations,
of contact orders of the y-series; conjugates are enumerated by adjoining
the needed roots to the coefficient tower, keeping everything exact.

Precision protocol: routines that cannot certify an answer at the current
truncation raise NeedsPrecision; drivers climb the precision ladder and
convert exhaustion into PrecisionExhausted.
"""

from __future__ import annotations

from math import gcd as igcd

from .config import DEFAULT, Config
from .errors import (EqualBranches, NeedsPrecision, NonFiniteAlongBranch)
from .fields import Scalar, Tower
from .multipoly import MultiPoly, YList, ynormalize, ysquarefree, _unit_normalize
from .series import INFINITY, Inconclusive, PowerSeries
from . import upoly as U


class BranchParam:
    """A parametrised curve branch in affine n-space: t -> components(t)."""

    __slots__ = ("tower", "components")

    def __init__(self, tower: Tower, components):
        self.tower = tower
        self.components = tuple(components)

    @property
    def nvars(self) -> int:
        return len(self.components)

    def __repr__(self):
        return "BranchParam(" + ", ".join(repr(c) for c in self.components) + ")"


class Morphism:
    """A polynomial map germ to the plane: (f, g) in n source variables."""

    __slots__ = ("tower", "f", "g")

    def __init__(self, tower: Tower, f: MultiPoly, g: MultiPoly):
        if f.nvars != g.nvars:
            raise ValueError("component variable counts differ")
        self.tower = tower
        self.f = f
        self.g = g

    @property
    def nvars(self) -> int:
        return self.f.nvars

    def on_branch(self, branch: BranchParam) -> tuple[PowerSeries, PowerSeries]:
        args = list(branch.components)
        return self.f.eval_series(args), self.g.eval_series(args)

    def jacobian_det(self) -> MultiPoly:
        if self.nvars != 2:
            raise ValueError("Jacobian determinant needs a plane source")
        return (self.f.diff(0) * self.g.diff(1)
                - self.f.diff(1) * self.g.diff(0))


class PlaneParam:
    """A plane branch in normalised form.

    Either the vertical axis x = 0 (``axis`` is "x") or x = c t^p with
    y given by a power series.  The horizontal axis is the ordinary case
    c = 1, p = 1, y = 0.
    """

    __slots__ = ("tower", "axis", "c", "p", "yser")

    def __init__(self, tower: Tower, axis: str | None = None,
                 c: Scalar | None = None, p: int | None = None,
                 yser: PowerSeries | None = None):
        self.tower = tower
        self.axis = axis
        if axis is None:
            self.c = c
            self.p = p
            self.yser = yser
        else:
            self.c = None
            self.p = None
            self.yser = None

    @classmethod
    def x_axis(cls, tower: Tower) -> "PlaneParam":
        """The branch y = 0 parametrised (t, 0)."""
        return cls(tower, c=tower.one, p=1, yser=PowerSeries.zero(tower))

    def is_y_zero(self) -> bool:
        return self.axis is None and self.yser.is_exact_zero()

    def param(self) -> tuple[PowerSeries, PowerSeries]:
        if self.axis == "x":
            return (PowerSeries.zero(self.tower),
                    PowerSeries.monomial(self.tower, 1, 1))
        return (PowerSeries.monomial(self.tower, self.c, self.p), self.yser)

    def __repr__(self):
        if self.axis == "x":
            return "PlaneParam(x = 0)"
        return f"PlaneParam(x = ({self.c})*t^{self.p}, y = {self.yser!r})"


def certified_valuation(series: PowerSeries):
    """Valuation as int or INFINITY; NeedsPrecision when undecidable."""
    v = series.valuation()
    if isinstance(v, Inconclusive):
        raise NeedsPrecision(
            f"valuation not determined below order {v.precision}",
            have=v.precision,
        )
    return v


def ord_along(poly: MultiPoly, branch: BranchParam):
    """Order of vanishing of poly along the branch (int or INFINITY)."""
    return certified_valuation(poly.eval_series(list(branch.components)))


def pure_power_form(X: PowerSeries, Y: PowerSeries, prec: int) -> PlaneParam:
    """Reparametrise so the x-component is exactly c t^p.

    Solves sigma(s) = s (1 + u(sigma(s)))^(-1/p) by fixed point iteration,
    where X = c t^p (1 + u); each pass fixes one more coefficient.
    """
    tower = X.tower
    p = certified_valuation(X)
    if p == INFINITY:
        return PlaneParam(tower, axis="x")
    c = X.coefficient(p)
    unit = PowerSeries(tower, {e - p: v for e, v in X.terms.items()},
                       None if X.prec is None else X.prec - p)
    u = unit.scale(c.inverse()) - PowerSeries.monomial(tower, 1, 0)
    if u.is_exact_zero():
        return PlaneParam(tower, c=c, p=p, yser=Y)
    work = prec
    if X.prec is not None:
        work = min(work, X.prec - p)
    s = PowerSeries.monomial(tower, 1, 1)
    sigma = s.truncate(work)
    for _ in range(work + 1):
        inner = u.compose(sigma).truncate(work)
        root = (PowerSeries.monomial(tower, 1, 0) + inner).nth_root_unit(p, work)
        new = (s * root.invert_unit(work)).truncate(work)
        if new.terms == sigma.terms:
            sigma = new
            break
        sigma = new
    return PlaneParam(tower, c=c, p=p, yser=Y.compose(sigma))


def _series_to_upoly(s: PowerSeries, tower: Tower) -> U.UPoly:
    if not s.exact:
        raise ValueError("expected an exact series")
    d = max(s.terms, default=0)
    out = [tower.zero] * (d + 1)
    for e, c in s.terms.items():
        out[e] = c
    return U.normalize(out)


def implicit_equation_exact(X: PowerSeries, Y: PowerSeries, tower: Tower
                            ) -> tuple[YList, int]:
    """(reduced implicit equation, covering degree) of an exact plane param.

    The resultant of x - X(t) and y - Y(t) with respect to t equals the
    reduced equation of the image branch raised to the covering degree;
    it is computed by specialising (x, y) on a rational grid and
    interpolating, then split by squarefree decomposition in y.
    """
    px = _series_to_upoly(X, tower)
    py = _series_to_upoly(Y, tower)
    dx_bound = U.deg(py)
    dy_bound = U.deg(px)
    rows = []
    for j in range(dy_bound + 1):
        yj = tower.rational(j)
        vals = []
        for i in range(dx_bound + 1):
            xi = tower.rational(i)
            a = U.sub([xi], px)
            b = U.sub([yj], py)
            vals.append((xi, U.resultant(a, b)))
        rows.append(U.lagrange_interpolate(tower, vals))
    # rows[j] is F(x, j); interpolate each x-coefficient in y
    ylist: list = []
    for _ in range(dy_bound + 1):
        ylist.append([])
    for i in range(dx_bound + 1):
        pts = [(tower.rational(j),
                rows[j][i] if i < len(rows[j]) else tower.zero)
               for j in range(dy_bound + 1)]
        col = U.lagrange_interpolate(tower, pts)
        for j, cf in enumerate(col):
            dest = ylist[j]
            while len(dest) <= i:
                dest.append(tower.zero)
            dest[i] = cf
    F = ynormalize([U.normalize(col) for col in ylist])
    sf = ysquarefree(F)
    if len(sf) != 1:
        raise ValueError("parametrisation does not define a single branch")
    g, k = sf[0]
    return _unit_normalize(g), k


def make_primitive(pp: PlaneParam, config: Config = DEFAULT,
                   orig: tuple[PowerSeries, PowerSeries] | None = None
                   ) -> PlaneParam:
    """Divide out a common parameter power so the branch is one-to-one.

    Certification: for an exact normalised form the support gcd is exact;
    a trivial gcd on a truncated form is also certain.  A nontrivial gcd
    on a truncated form is certified through the implicit equation when
    the original parametrisation (``orig``) is an exact polynomial pair,
    and otherwise triggers precision escalation.
    """
    if pp.axis is not None:
        return pp
    g = pp.p
    for e in pp.yser.terms:
        g = igcd(g, e)
    if g == 1:
        return pp
    if pp.yser.exact:
        return PlaneParam(pp.tower, c=pp.c, p=pp.p // g,
                          yser=pp.yser.deflate(g))
    if orig is not None and orig[0].exact and orig[1].exact:
        _, k = implicit_equation_exact(orig[0], orig[1], pp.tower)
        if k == 1:
            return pp
        if pp.p % k or any(e % k for e in pp.yser.terms):
            raise NeedsPrecision("support inconsistent with covering degree")
        return PlaneParam(pp.tower, c=pp.c, p=pp.p // k,
                          yser=pp.yser.deflate(k))
    raise NeedsPrecision(
        f"cannot certify covering degree {g} from a truncated series"
    )


def direct_image(morphism: Morphism, branch: BranchParam, prec: int,
                 config: Config = DEFAULT, primitive: bool = True
                 ) -> PlaneParam:
    """The image plane branch of a source branch, in normalised form."""
    X, Y = morphism.on_branch(branch)
    vx = certified_valuation(X)
    vy = certified_valuation(Y)
    if vx == INFINITY and vy == INFINITY:
        raise NonFiniteAlongBranch(
            "both morphism components vanish along the branch"
        )
    if vx == INFINITY:
        return PlaneParam(morphism.tower, axis="x")
    if vy == INFINITY:
        return PlaneParam.x_axis(morphism.tower)
    pp = pure_power_form(X, Y, prec)
    if primitive:
        pp = make_primitive(pp, config, orig=(X, Y))
    return pp


def plane_intersection(b1: PlaneParam, b2: PlaneParam,
                       config: Config = DEFAULT) -> int:
    """Intersection multiplicity at the origin of two distinct branches.

    Sum over the conjugate parametrisations of the second branch of the
    contact order with the first, computed after moving both onto the
    common parameter u with x = (c1) u^(p1 p2).  Raises EqualBranches if
    the branches coincide, NeedsPrecision if contact exceeds the
    certified series length.
    """
    if b1.axis == "x" and b2.axis == "x":
        raise EqualBranches("both branches are the axis x = 0")
    if b1.axis == "x":
        return b2.p
    if b2.axis == "x":
        return b1.p
    tower = b1.tower
    ratio = b1.c / b2.c
    radical = ([-ratio] + [tower.zero] * (b2.p - 1)
               + [tower.one.lift(ratio.level)])
    roots = [r for r, _ in U.roots_in_splitting_field(radical, config)]
    left = b1.yser.dilate(b2.p)
    total = 0
    for rho in roots:
        diff = left - b2.yser.scale_dilate(rho, b1.p)
        v = certified_valuation(diff)
        if v == INFINITY:
            raise EqualBranches("branches coincide")
        total += v
    if total % b2.p:
        raise NeedsPrecision("conjugate contact orders failed to balance")
    return total // b2.p


def plane_params_equal(b1: PlaneParam, b2: PlaneParam,
                       config: Config = DEFAULT) -> bool:
    """Whether two normalised primitive branches are the same curve germ."""
    if (b1.axis == "x") != (b2.axis == "x"):
        return False
    if b1.axis == "x":
        return True
    if b1.p != b2.p or b1.c != b2.c:
        return False
    tower = b1.tower
    for zeta in U.roots_of_unity(tower, b1.p, config):
        diff = b1.yser.scale_dilate(zeta, 1) - b2.yser
        v = diff.valuation()
        if isinstance(v, Inconclusive):
            raise NeedsPrecision(
                f"branch equality open below order {v.precision}",
                have=v.precision,
            )
        if v == INFINITY:
            return True
    return False
