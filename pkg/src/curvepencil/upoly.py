"""Univariate polynomial utilities over a tower field.

Polynomials are plain lists of ``Scalar`` coefficients, low degree first,
with no trailing zeros (the zero polynomial is the empty list).  These are
the workhorse for minimal-polynomial handling, edge polynomials of Newton
polygons, resultants by interpolation, and irreducibility analysis.

Factorisation strategy: over the rationals we hand the problem to sympy
(standard, well-tested); over an extension level we use the classical norm
(Trager) reduction back to the field below.  Degrees are bounded by
``Config.factor_degree_bound`` -- beyond that we fail loudly rather than
return something unverified.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .config import DEFAULT, Config
from .errors import FactorDegreeExceeded
from .fields import Scalar, Tower

UPoly = list  # list[Scalar], low degree first, no trailing zeros


def normalize(p: list) -> UPoly:
    while p and p[-1].is_zero():
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1  # deg of zero polynomial is -1


def constant(tower: Tower, c) -> UPoly:
    c = tower.coerce(c)
    return [] if c.is_zero() else [c]


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return normalize(out)


def sub(a: UPoly, b: UPoly) -> UPoly:
    return add(a, [-c for c in b])


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    tower = a[0].tower
    out = [tower.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return normalize(out)


def scale(p: UPoly, c: Scalar) -> UPoly:
    if c.is_zero():
        return []
    return normalize([x * c for x in p])


def monic(p: UPoly) -> UPoly:
    if not p:
        return []
    return scale(p, p[-1].inverse())


def divmod_poly(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    tower = b[0].tower
    q = [tower.zero] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    inv_lead = b[-1].inverse()
    while len(r) >= len(b):
        normalize(r)
        if len(r) < len(b):
            break
        shift = len(r) - len(b)
        f = r[-1] * inv_lead
        q[shift] = q[shift] + f
        for i, c in enumerate(b):
            r[shift + i] = r[shift + i] - f * c
        r.pop()
    return normalize(q), normalize(r)


def gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = list(a), list(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def derivative(p: UPoly) -> UPoly:
    if len(p) <= 1:
        return []
    return normalize([p[i] * i for i in range(1, len(p))])


def evaluate(p: UPoly, x: Scalar) -> Scalar:
    tower = x.tower
    acc = tower.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_linear(p: UPoly, a: Scalar, b: Scalar) -> UPoly:
    """p(a*z + b) via Horner over polynomials."""
    tower = a.tower
    acc: UPoly = []
    lin = normalize([b, a])
    for c in reversed(p):
        acc = add(mul(acc, lin), constant(tower, c))
    return acc


def shift_root(p: UPoly, b: Scalar) -> UPoly:
    """p(z + b)."""
    return compose_linear(p, b.tower.one, b)


def valuation_x(p: UPoly):
    """Order of vanishing at 0 (inf for the zero polynomial)."""
    for i, c in enumerate(p):
        if not c.is_zero():
            return i
    return float("inf")


def resultant(a: UPoly, b: UPoly) -> Scalar:
    """Resultant of two scalar-coefficient polynomials (Euclidean PRS)."""
    tower = (a or b)[0].tower if (a or b) else None
    if tower is None:
        raise ValueError("resultant of two zero polynomials")
    if not a or not b:
        return tower.zero
    if deg(a) == 0:
        return a[0] ** deg(b)
    if deg(b) == 0:
        return b[0] ** deg(a)
    sign = tower.one
    acc = tower.one
    a, b = list(a), list(b)
    while True:
        if deg(b) == 0:
            return acc * sign * b[0] ** deg(a)
        _, r = divmod_poly(a, b)
        if not r:
            return tower.zero
        acc = acc * b[-1] ** (deg(a) - deg(r))
        if (deg(a) * deg(b)) % 2 == 1:
            sign = -sign
        a, b = b, r


def lagrange_interpolate(tower: Tower, points: list[tuple[Scalar, Scalar]]) -> UPoly:
    """The unique polynomial of degree < len(points) through the points.

    Newton divided differences followed by a Horner-style expansion of the
    Newton basis: quadratic in the number of points.
    """
    if not points:
        return []
    xs = [p for p, _ in points]
    coef = [v for _, v in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = normalize([coef[-1]])
    for j in range(n - 2, -1, -1):
        result = add(mul(result, [-xs[j], tower.one]),
                     normalize([coef[j]]))
    return result


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: return [(factor_i, multiplicity_i)], factors monic."""
    p = monic(p)
    if deg(p) <= 0:
        return []
    out = []
    dp = derivative(p)
    g = gcd(p, dp)
    c, _ = divmod_poly(p, g)
    d = sub(divmod_poly(dp, g)[0], derivative(c))
    i = 1
    while deg(c) > 0:
        h = gcd(c, d)
        if deg(h) > 0:
            out.append((monic(h), i))
        c, _ = divmod_poly(c, h)
        d = sub(divmod_poly(d, h)[0], derivative(c))
        i += 1
    return out


def is_squarefree(p: UPoly) -> bool:
    return deg(gcd(p, derivative(p))) == 0


# ---------------------------------------------------------------------------
# Factorisation over the tower
# ---------------------------------------------------------------------------

_Z = sympy.Symbol("z")


def _max_level(p: UPoly) -> int:
    return max((c.try_lower().level for c in p), default=0)


def _factor_rational(tower: Tower, p: UPoly) -> list[UPoly]:
    """Irreducible monic factors over Q of a squarefree polynomial."""
    coeffs = [c.as_fraction() for c in p]
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _Z**i
               for i, c in enumerate(coeffs))
    _, factors = sympy.Poly(expr, _Z, domain="QQ").factor_list()
    out = []
    for fac, mult in factors:
        assert mult == 1, "input was not squarefree"
        fc = fac.all_coeffs()[::-1]
        lead = Fraction(fc[-1].p, fc[-1].q)
        out.append(
            [tower.rational(Fraction(c.p, c.q) / lead) for c in fc]
        )
    return out


def _norm_to_lower(tower: Tower, level: int, q: Scalar) -> Scalar:
    """Norm of q from level ``level`` down to level ``level - 1``.

    Determinant of the multiplication-by-q matrix on the power basis of the
    generator, computed by Gaussian elimination over the field below.
    """
    d = tower.degree(level)
    gen = tower.generator(level)
    # columns: q * gen^j expressed in the power basis
    cols = []
    cur = q.lift(level)
    for j in range(d):
        cols.append([Scalar(tower, level - 1, c) for c in cur.rep])
        cur = cur * gen
    # matrix[i][j] = coefficient i of column j
    mat = [[cols[j][i] for j in range(d)] for i in range(d)]
    det = tower.one
    for col in range(d):
        pivot = None
        for row in range(col, d):
            if not mat[row][col].is_zero():
                pivot = row
                break
        if pivot is None:
            return tower.zero
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = mat[col][col].inverse()
        for row in range(col + 1, d):
            if mat[row][col].is_zero():
                continue
            f = mat[row][col] * inv
            for k in range(col, d):
                mat[row][k] = mat[row][k] - f * mat[col][k]
    return det


def _norm_polynomial(tower: Tower, level: int, p: UPoly) -> UPoly:
    """Norm of p(z) (level-``level`` coefficients) down one level.

    Evaluation/interpolation: the norm has degree deg(p) * [K : F].
    """
    d = tower.degree(level)
    target = deg(p) * d
    pts = []
    x0 = 0
    while len(pts) < target + 1:
        xs = tower.rational(x0)
        val = evaluate(p, xs)
        pts.append((xs, _norm_to_lower(tower, level, val).try_lower()))
        x0 += 1
    return lagrange_interpolate(tower, [(x, y) for x, y in pts])


def factor_squarefree(p: UPoly, config: Config = DEFAULT,
                      level: int | None = None) -> list[UPoly]:
    """Monic irreducible factors of a squarefree monic polynomial.

    Factorisation is over the field at ``level`` (default: the whole tower).
    Factoring over the full tower matters even for rational input: a factor
    irreducible over Q may split once extensions are present, and adjoining
    a reducible polynomial would break the field structure.
    """
    p = monic(p)
    if deg(p) <= 0:
        return []
    if deg(p) == 1:
        return [p]
    tower = p[0].tower
    if level is None:
        # the bound guards user-facing degrees, not internal norm degrees
        if deg(p) > config.factor_degree_bound:
            raise FactorDegreeExceeded(
                f"degree {deg(p)} exceeds factorisation bound "
                f"{config.factor_degree_bound}"
            )
        level = tower.levels
    if level == 0:
        return _factor_rational(tower, [c for c in p])
    gen = tower.generator(level)
    p_lifted = [c.lift(level) for c in p]
    for s in range(0, 20):
        # f_s(z) = p(z - s*alpha)
        shift = tower.rational(-s) * gen
        fs = shift_root(p_lifted, shift)
        norm = _norm_polynomial(tower, level, fs)
        if not is_squarefree(norm):
            continue
        sub_factors = factor_tower(norm, config, level=level - 1)
        out = []
        remaining = list(p_lifted)
        for nf, mult in sub_factors:
            assert mult == 1
            # candidate = gcd(p, nf(z + s*alpha)) over the level field
            cand = gcd(remaining, shift_root([c.lift(level) for c in nf],
                                             tower.rational(s) * gen))
            if deg(cand) >= 1:
                out.append(monic(cand))
                remaining, _ = divmod_poly(remaining, cand)
        if sum(deg(f) for f in out) == deg(p):
            return out
    raise FactorDegreeExceeded("norm never became squarefree (no good shift)")


def factor_tower(p: UPoly, config: Config = DEFAULT,
                 level: int | None = None) -> list[tuple[UPoly, int]]:
    """Full factorisation [(monic irreducible, multiplicity)] over the tower."""
    out = []
    for part, mult in squarefree_decomposition(p):
        for fac in factor_squarefree(part, config, level=level):
            out.append((fac, mult))
    return out


def roots_in_splitting_field(p: UPoly, config: Config = DEFAULT
                             ) -> list[tuple[Scalar, int]]:
    """All roots of p, adjoining extension levels as needed.

    Returns [(root, multiplicity)]; every root of p appears (the tower is
    grown to a splitting field of p, factor by factor).
    """
    tower = p[0].tower
    out = []
    for part, mult in squarefree_decomposition(p):
        stack = [part]
        while stack:
            q = stack.pop()
            if deg(q) == 0:
                continue
            factors = factor_squarefree(q, config)
            nonlinear = []
            for fac in factors:
                if deg(fac) == 1:
                    out.append((-fac[0] / fac[1], mult))
                else:
                    nonlinear.append(fac)
            for fac in nonlinear:
                alpha = tower.adjoin_root(fac)
                lifted = [c.lift(alpha.level) for c in fac]
                quo, rem = divmod_poly(lifted, [-alpha, tower.one.lift(alpha.level)])
                assert not rem
                out.append((alpha, mult))
                stack.append(quo)
    return out


def roots_of_unity(tower: Tower, n: int, config: Config = DEFAULT) -> list[Scalar]:
    """All n-th roots of unity, extending the tower as needed."""
    p = [tower.rational(-1)] + [tower.zero] * (n - 1) + [tower.one]
    return [r for r, _ in roots_in_splitting_field(p, config)]
