"""Sparse multivariate polynomials and bivariate structure helpers.

``MultiPoly`` is a sparse dict {exponent tuple: Scalar} over a tower field,
with just enough arithmetic for morphism components: ring operations,
partial derivatives, and evaluation on tuples of power series.

For plane-curve work a second view is used: a polynomial in y whose
coefficients are univariate polynomials in x (a "ylist", low y-degree
first).  On that view we provide exact division, primitive-PRS gcd,
Yun squarefree decomposition with respect to y, and the resultant with
respect to y computed by evaluation and interpolation.
"""

from __future__ import annotations

from .errors import CommonFactor
from .fields import Scalar, Tower
from . import upoly as U
from .series import PowerSeries
from .upoly import UPoly


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over a tower field."""

    __slots__ = ("tower", "nvars", "terms")

    def __init__(self, tower: Tower, nvars: int, terms: dict):
        self.tower = tower
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def constant(cls, tower: Tower, nvars: int, c) -> "MultiPoly":
        return cls(tower, nvars, {(0,) * nvars: tower.coerce(c)})

    @classmethod
    def variable(cls, tower: Tower, nvars: int, i: int) -> "MultiPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(tower, nvars, {e: tower.one})

    @classmethod
    def from_terms(cls, tower: Tower, nvars: int, terms) -> "MultiPoly":
        return cls(tower, nvars,
                   {tuple(e): tower.coerce(c) for e, c in dict(terms).items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.tower.zero) + c
        return MultiPoly(self.tower, self.nvars, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.tower, self.nvars,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in terms:
                    terms[e] = terms[e] + c1 * c2
                else:
                    terms[e] = c1 * c2
        return MultiPoly(self.tower, self.nvars, terms)

    def scale(self, c) -> "MultiPoly":
        c = self.tower.coerce(c)
        return MultiPoly(self.tower, self.nvars,
                         {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.tower, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "MultiPoly":
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            nc = c * e[i]
            terms[ne] = terms.get(ne, self.tower.zero) + nc
        return MultiPoly(self.tower, self.nvars, terms)

    def eval_series(self, args: list[PowerSeries]) -> PowerSeries:
        """Substitute each variable by a power series in t."""
        if len(args) != self.nvars:
            raise ValueError("argument count mismatch")
        result = PowerSeries.zero(self.tower)
        for e, c in self.terms.items():
            term = PowerSeries.monomial(self.tower, c, 0)
            for s, k in zip(args, e):
                if k:
                    term = term * s ** k
            result = result + term
        return result

    def eval_scalars(self, args: list[Scalar]) -> Scalar:
        result = self.tower.zero
        for e, c in self.terms.items():
            v = c
            for s, k in zip(args, e):
                if k:
                    v = v * s ** k
            result = result + v
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        names = ["x", "y", "z", "w"] + [f"x{i}" for i in range(4, self.nvars)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mons = [
                (names[i] if k == 1 else f"{names[i]}^{k}")
                for i, k in enumerate(e) if k
            ]
            mon = "*".join(mons)
            cs = str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Bivariate view: list of UPoly-in-x, indexed by y-degree
# ---------------------------------------------------------------------------

YList = list  # list[UPoly], low y-degree first, no trailing zero entries


def ynormalize(p: list) -> YList:
    while p and not p[-1]:
        p.pop()
    return p


def ydeg(p: YList) -> int:
    return len(p) - 1


def to_ylist(mp: MultiPoly) -> YList:
    """Bivariate MultiPoly (vars x, y) as coefficients-in-x per y power."""
    if mp.nvars != 2:
        raise ValueError("expected a bivariate polynomial")
    dy = mp.degree(1)
    out: list = [[] for _ in range(dy + 1)] if dy >= 0 else []
    for (ex, ey), c in mp.terms.items():
        col = out[ey]
        while len(col) <= ex:
            col.append(mp.tower.zero)
        col[ex] = col[ex] + c
    return ynormalize([U.normalize(col) for col in out])


def from_ylist(tower: Tower, p: YList) -> MultiPoly:
    terms = {}
    for ey, col in enumerate(p):
        for ex, c in enumerate(col):
            if not c.is_zero():
                terms[(ex, ey)] = c
    return MultiPoly(tower, 2, terms)


def yadd(a: YList, b: YList) -> YList:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ca = a[i] if i < len(a) else []
        cb = b[i] if i < len(b) else []
        out.append(U.add(ca, cb))
    return ynormalize(out)


def ysub(a: YList, b: YList) -> YList:
    return yadd(a, [[-c for c in col] for col in b])


def ymul(a: YList, b: YList) -> YList:
    if not a or not b:
        return []
    out: list = [[] for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            out[i + j] = U.add(out[i + j], U.mul(ca, cb))
    return ynormalize(out)


def yscale(a: YList, c: UPoly) -> YList:
    if not c:
        return []
    return ynormalize([U.mul(col, c) for col in a])


def yderivative(a: YList) -> YList:
    if len(a) <= 1:
        return []
    return ynormalize([U.scale(a[i], a[i][0].tower.rational(i)) if a[i] else []
                       for i in range(1, len(a))])


def ycontent(a: YList) -> UPoly:
    """Gcd in K[x] of the coefficients (monic); [] for the zero polynomial."""
    g: UPoly = []
    for col in a:
        g = U.gcd(g, col)
        if U.deg(g) == 0:
            return g
    return g


def ydivexact_upoly(a: YList, c: UPoly) -> YList:
    """Divide every coefficient by c; division must be exact."""
    out = []
    for col in a:
        q, r = U.divmod_poly(col, c)
        if r:
            raise ValueError("inexact content division")
        out.append(q)
    return ynormalize(out)


def yprimitive(a: YList) -> tuple[UPoly, YList]:
    """(content, primitive part); primitive part has monic-content 1."""
    if not a:
        return [], []
    cont = ycontent(a)
    return cont, ydivexact_upoly(a, cont)


def ydivexact(a: YList, b: YList) -> YList:
    """Exact division in K[x][y]; raises ValueError if not a multiple."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q: list = [[] for _ in range(max(len(a) - len(b) + 1, 1))]
    r = [list(col) for col in a]
    while ynormalize(r) and len(r) >= len(b):
        shift = len(r) - len(b)
        qc, rem = U.divmod_poly(r[-1], b[-1])
        if rem:
            raise ValueError("inexact polynomial division")
        q[shift] = U.add(q[shift], qc)
        for i, col in enumerate(b):
            r[shift + i] = U.sub(r[shift + i], U.mul(qc, col))
        r.pop()
    if ynormalize(r):
        raise ValueError("inexact polynomial division")
    return ynormalize(q)


def ypseudo_rem(a: YList, b: YList) -> YList:
    """Pseudo-remainder of a by b with respect to y."""
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    d = len(a) - len(b)
    if d < 0:
        return [list(col) for col in a]
    lead = b[-1]
    r = [list(col) for col in a]
    r = ynormalize(r)
    steps = d + 1
    # premultiply so every elimination step divides exactly
    r = yscale(r, _upow(lead, steps))
    while r and len(r) >= len(b):
        shift = len(r) - len(b)
        qc, rem = U.divmod_poly(r[-1], lead)
        assert not rem, "pseudo-division invariant broken"
        for i, col in enumerate(b):
            r[shift + i] = U.sub(r[shift + i], U.mul(qc, col))
        r.pop()
        r = ynormalize(r)
    return r


def _upow(p: UPoly, n: int) -> UPoly:
    out = [p[0].tower.one] if p else []
    base = p
    while n:
        if n & 1:
            out = U.mul(out, base)
        base = U.mul(base, base)
        n >>= 1
    return out


def _unit_normalize(p: YList) -> YList:
    """Scale by a scalar so the top coefficient of the top y-term is 1."""
    if not p:
        return []
    return yscale(p, [p[-1][-1].inverse()])


def ygcd(a: YList, b: YList) -> YList:
    """Gcd in K[x][y] by primitive pseudo-remainder sequence.

    The result includes the common x-content and is scalar-normalised so
    its top coefficient is 1; the gcd of coprime polynomials is [[1]].
    """
    if not a:
        return _unit_normalize(b)
    if not b:
        return _unit_normalize(a)
    ca, pa = yprimitive(a)
    cb, pb = yprimitive(b)
    cont = U.gcd(ca, cb)
    while pb:
        r = ypseudo_rem(pa, pb)
        pa, pb = pb, (yprimitive(r)[1] if r else [])
    if len(pa) == 1:
        pa = [[pa[0][0].tower.one]]
    result = ymul([cont], pa) if U.deg(cont) > 0 else pa
    return _unit_normalize(result)


def ysquarefree(p: YList) -> list[tuple[YList, int]]:
    """Yun decomposition of the y-primitive part: [(factor, multiplicity)].

    The x-content is not included; callers handle it separately.
    """
    _, p = yprimitive(p)
    if ydeg(p) <= 0:
        return []
    dp = yderivative(p)
    g = ygcd(p, dp)
    c = ydivexact(p, g)
    d = ysub(ydivexact(dp, g), yderivative(c))
    out = []
    i = 1
    while ydeg(c) > 0:
        h = ygcd(c, d)
        if ydeg(h) > 0:
            out.append((h, i))
        c = ydivexact(c, h)
        d = ysub(ydivexact(d, h), yderivative(c))
        i += 1
    return out


def yeval_x(p: YList, x0: Scalar) -> UPoly:
    """Specialise x = x0; result is a polynomial in y."""
    return U.normalize([U.evaluate(col, x0) for col in p])


def yresultant(a: YList, b: YList, tower: Tower) -> UPoly:
    """Resultant with respect to y, as a polynomial in x.

    Computed by specialising x at rational points where neither leading
    y-coefficient vanishes, taking scalar resultants, and interpolating.
    Raises CommonFactor if the two polynomials share a y-dependent factor.
    """
    if not a or not b:
        return []
    if ydeg(a) == 0 or ydeg(b) == 0:
        # resultant with a degree-0 polynomial in y
        if ydeg(a) == 0:
            const, full = a, b
        else:
            const, full = b, a
        return _upow(const[0], ydeg(full))
    g = ygcd(a, b)
    if ydeg(g) > 0:
        raise CommonFactor("polynomials share a y-dependent factor")
    da, db = ydeg(a), ydeg(b)
    bound = max(U.deg(col) for col in a) * db + max(U.deg(col) for col in b) * da
    pts = []
    x0 = 0
    while len(pts) < bound + 1:
        xs = tower.rational(x0)
        x0 += 1
        if U.evaluate(a[-1], xs).is_zero() or U.evaluate(b[-1], xs).is_zero():
            continue
        res = U.resultant(yeval_x(a, xs), yeval_x(b, xs))
        pts.append((xs, res))
    return U.lagrange_interpolate(tower, pts)


def yeval_series(p: YList, xs: PowerSeries, ys: PowerSeries) -> PowerSeries:
    """Substitute power series for x and y."""
    tower = xs.tower
    result = PowerSeries.zero(tower)
    ypow = PowerSeries.monomial(tower, 1, 0)
    for j, col in enumerate(p):
        if j:
            ypow = ypow * ys
        if not col:
            continue
        acc = PowerSeries.zero(tower)
        xpow = PowerSeries.monomial(tower, 1, 0)
        for i, c in enumerate(col):
            if i:
                xpow = xpow * xs
            if not c.is_zero():
                acc = acc + xpow.scale(c)
        result = result + acc * ypow
    return result
