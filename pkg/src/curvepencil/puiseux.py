"""Newton-Puiseux expansion of plane curve germs at the origin.

``puiseux_branches`` decomposes a bivariate polynomial germ into its
branches at (0, 0).  Each branch is delivered as a parametrisation
(t^E, y(t)) with y a power series over the (possibly extended) coefficient
tower; the vertical branch x = 0 is reported separately.

The classical algorithm: strip axis factors, split into squarefree layers,
then iterate Newton polygons.  Each polygon edge of inclination p/q
contributes branches y ~ c x^{p/q}; after the substitution
x -> x^q, y -> x^p (c + y) the process repeats on a germ of smaller
y-degree until a simple root remains, at which point quadratic Newton
lifting produces the tail of the series.  Roots of edge polynomials are
found exactly, extending the coefficient tower as needed, so all branch
coefficients stay exact; only series length is truncated.

Precision contract: the caller passes a target truncation order.  All
coefficients are exact, and each returned series carries its certified
precision (or is marked exact when the expansion terminates).
"""

from __future__ import annotations

from math import comb

from .config import DEFAULT, Config
from .errors import MaxIterationsExceeded
from .fields import Scalar, Tower
from .multipoly import (MultiPoly, YList, to_ylist, ydeg, ynormalize,
                        yderivative, yeval_series, ysquarefree)
from .series import PowerSeries
from . import upoly as U


class PlaneBranch:
    """One branch of a plane curve germ at the origin.

    Either the vertical axis branch (``axis`` is "x", parametrised
    (0, t)) or a parametrisation (t^exponent, yser(t)).  ``mult`` is the
    multiplicity of the branch in the defining polynomial.
    """

    __slots__ = ("tower", "axis", "exponent", "yser", "mult")

    def __init__(self, tower: Tower, axis: str | None = None,
                 exponent: int | None = None, yser: PowerSeries | None = None,
                 mult: int = 1):
        self.tower = tower
        self.axis = axis
        self.exponent = exponent
        self.yser = yser
        self.mult = mult

    @property
    def exact(self) -> bool:
        if self.axis is not None:
            return True
        return self.yser.exact

    def param(self) -> tuple[PowerSeries, PowerSeries]:
        """The parametrisation (x(t), y(t))."""
        if self.axis == "x":
            return (PowerSeries.zero(self.tower),
                    PowerSeries.monomial(self.tower, 1, 1))
        return (PowerSeries.monomial(self.tower, 1, self.exponent), self.yser)

    def __repr__(self):
        if self.axis == "x":
            return f"PlaneBranch(x = 0, mult={self.mult})"
        return (f"PlaneBranch(x = t^{self.exponent}, y = {self.yser!r}, "
                f"mult={self.mult})")


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Lower convex hull of (j, i) points, j strictly increasing."""
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (j1, i1), (j2, i2) = hull[-2], hull[-1]
            # keep only strict left turns; collinear points merge into one edge
            if (j2 - j1) * (p[1] - i1) - (i2 - i1) * (p[0] - j1) > 0:
                break
            hull.pop()
        hull.append(p)
    return hull


def _descending_edges(H: YList) -> list[tuple[int, int, int, int]]:
    """Newton polygon edges (j1, i1, j2, i2) with x-order i decreasing.

    These are exactly the edges carrying branches with y -> 0 as x -> 0.
    """
    points = [(j, U.valuation_x(col)) for j, col in enumerate(H) if col]
    hull = _lower_hull(points)
    edges = []
    for (j1, i1), (j2, i2) in zip(hull, hull[1:]):
        if i2 < i1:
            edges.append((j1, i1, j2, i2))
    return edges


def _edge_polynomial(H: YList, edge: tuple[int, int, int, int], tower: Tower
                     ) -> tuple[int, int, int, U.UPoly]:
    """(p, q, N0, phi) for an edge: inclination p/q in lowest terms,
    weighted order N0 = q*i + p*j on the edge, and the edge polynomial
    phi(z) = sum of edge coefficients with z = (leading ratio)^q."""
    j1, i1, j2, i2 = edge
    from math import gcd as igcd
    rise, run = i1 - i2, j2 - j1
    g = igcd(rise, run)
    p, q = rise // g, run // g
    n0 = q * i1 + p * j1
    phi = []
    for k in range(run // q + 1):
        j = j1 + k * q
        i = (n0 - p * j) // q
        col = H[j] if j < len(H) else []
        c = col[i] if i < len(col) else tower.zero
        phi.append(c)
    return p, q, n0, U.normalize(phi)


def _substitute(H: YList, p: int, q: int, c: Scalar, n0: int, tower: Tower
                ) -> YList:
    """H(x^q, x^p (c + y)) / x^{n0} as a polynomial germ."""
    out: list[list[Scalar]] = [[] for _ in range(len(H))]
    for j, col in enumerate(H):
        if not col:
            continue
        # (c + y)^j expanded in y
        binom = [tower.coerce(comb(j, k)) * c ** (j - k) for k in range(j + 1)]
        for i, a in enumerate(col):
            if a.is_zero():
                continue
            ex = q * i + p * j - n0
            for k, bc in enumerate(binom):
                if bc.is_zero():
                    continue
                dest = out[k]
                while len(dest) <= ex:
                    dest.append(tower.zero)
                dest[ex] = dest[ex] + a * bc
    return ynormalize([U.normalize(col) for col in out])


def _hensel(H: YList, tower: Tower, prec: int) -> PowerSeries:
    """Series solution y(x) of H(x, y) = 0 with y(0) = 0 a simple root.

    Quadratic Newton lifting; returns an exact series when the solution
    is a polynomial satisfying H identically, else one of precision prec.
    """
    xs = PowerSeries.monomial(tower, 1, 1)
    hy = yderivative(H)
    y = PowerSeries.zero(tower)
    reached = 1
    while reached < prec:
        reached = min(2 * reached, prec)
        num = yeval_series(H, xs, y)
        den = yeval_series(hy, xs, y)
        if num.is_exact_zero():
            return y
        den_t = den.truncate(reached)
        corr = num.truncate(reached) * den_t.invert_unit(reached)
        y = PowerSeries(tower, (y - corr).truncate(reached).terms, None)
    if yeval_series(H, xs, y).is_exact_zero():
        return y
    return PowerSeries(tower, y.terms, prec)


def _expand(H: YList, tower: Tower, prec: int, config: Config, depth: int
            ) -> list[tuple[int, PowerSeries]]:
    """Branches (E, y-series with x = t^E) of a squarefree germ."""
    if depth > config.max_iterations:
        raise MaxIterationsExceeded(
            f"Newton polygon recursion exceeded {config.max_iterations} levels"
        )
    out: list[tuple[int, PowerSeries]] = []
    H = list(H)
    if H and not H[0]:
        # y divides H exactly: the expansion terminates here
        out.append((1, PowerSeries.zero(tower)))
        H = ynormalize(H[1:])
    if ydeg(H) <= 0:
        return out
    for edge in _descending_edges(H):
        p, q, n0, phi = _edge_polynomial(H, edge, tower)
        for root, mult in U.roots_in_splitting_field(phi, config):
            if q == 1:
                c = root
            else:
                # one q-th root of the edge root; the other choices give
                # the same branch up to reparametrisation
                radical = ([-root] + [tower.zero] * (q - 1)
                           + [tower.one.lift(root.level)])
                c = U.roots_in_splitting_field(radical, config)[0][0]
            H1 = _substitute(H, p, q, c, n0, tower)
            if mult == 1:
                subs = [(1, _hensel(H1, tower, prec))]
            else:
                subs = _expand(H1, tower, prec, config, depth + 1)
            for e2, ys2 in subs:
                const = PowerSeries.monomial(tower, c, 0)
                yser = (const + ys2).shift(p * e2)
                out.append((q * e2, yser))
    return out


def puiseux_branches(F, tower: Tower, prec: int, config: Config = DEFAULT
                     ) -> list[PlaneBranch]:
    """All branches of the germ F at the origin.

    F may be a bivariate MultiPoly (variables x, y) or a ylist.  Branch
    coefficients are exact; the coefficient tower is extended in place as
    needed.  Raises ValueError if F does not vanish at the origin (no
    branches) only implicitly: the returned list is then empty.
    """
    H = to_ylist(F) if isinstance(F, MultiPoly) else ynormalize(list(F))
    if not H:
        raise ValueError("zero polynomial has no branch decomposition")
    out: list[PlaneBranch] = []
    a = min(U.valuation_x(col) for col in H if col)
    if a >= 1:
        out.append(PlaneBranch(tower, axis="x", mult=a))
        H = ynormalize([col[a:] if col else [] for col in H])
    b = 0
    while b < len(H) and not H[b]:
        b += 1
    if b:
        out.append(PlaneBranch(tower, exponent=1,
                               yser=PowerSeries.zero(tower), mult=b))
        H = ynormalize(H[b:])
    if ydeg(H) <= 0:
        return out
    if not H[0][0].is_zero():
        # nonzero constant term: nothing more passes through the origin
        return out
    for factor, mult in ysquarefree(H):
        for e, yser in _expand(factor, tower, prec, config, 0):
            out.append(PlaneBranch(tower, exponent=e, yser=yser, mult=mult))
    return out
