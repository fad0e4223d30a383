"""Exact coefficient fields: the rationals extended by a tower of simple
algebraic extensions.

A ``Tower`` starts at level 0 (the rationals, represented by ``Fraction``)
and grows by ``adjoin_root``: each new level adjoins a root of a monic
minimal polynomial with coefficients from the levels below.  The tower is
append-only, so scalars created earlier remain valid forever.

A ``Scalar`` is the pair (level, representation).  The representation at
level 0 is a ``Fraction``; at level k >= 1 it is a tuple of level-(k-1)
representations of length deg(minpoly_k) -- the normal form of the element
as a polynomial in the level-k generator.  Because representations are
reduced modulo the minimal polynomials, equality of representations is
equality of field elements: zero testing is canonical.

Minimal polynomials are asserted irreducible by the caller.  If that
assertion was wrong, some inversion eventually meets a zero divisor and a
``ZeroDivisor`` error reports the offending factor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ZeroDivisor

Rat = Fraction


def _is_zero_rep(level: int, rep) -> bool:
    if level == 0:
        return rep == 0
    return all(_is_zero_rep(level - 1, c) for c in rep)


class Tower:
    """An append-only tower of simple extensions of the rationals."""

    __slots__ = ("_minpolys",)

    def __init__(self):
        # _minpolys[i]: coefficient tuple (low degree first, monic, level-i
        # representations) of the minimal polynomial defining level i+1.
        self._minpolys: list[tuple] = []

    # -- construction -----------------------------------------------------

    @property
    def levels(self) -> int:
        return len(self._minpolys)

    def rational(self, a=0, b=1) -> "Scalar":
        return Scalar(self, 0, Fraction(a, b))

    @property
    def zero(self) -> "Scalar":
        return self.rational(0)

    @property
    def one(self) -> "Scalar":
        return self.rational(1)

    def generator(self, level: int) -> "Scalar":
        """The adjoined root defining extension ``level`` (1-based)."""
        if not 1 <= level <= self.levels:
            raise ValueError(f"no extension level {level}")
        d = len(self._minpolys[level - 1]) - 1
        rep = tuple(
            self._one_rep(level - 1) if i == 1 else self._zero_rep(level - 1)
            for i in range(d)
        )
        return Scalar(self, level, rep)

    def degree(self, level: int) -> int:
        return len(self._minpolys[level - 1]) - 1

    def adjoin_root(self, minpoly: Sequence["Scalar"]) -> "Scalar":
        """Adjoin a root of ``minpoly`` (coefficients low degree first).

        The polynomial must be monic of degree >= 2 and is asserted
        irreducible by the caller.  Returns the new generator; every prior
        Scalar embeds unchanged.
        """
        level = self.levels
        coeffs = [self.coerce(c) for c in minpoly]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if coeffs[-1] != self.one:
            raise ValueError("minimal polynomial must be monic")
        self._minpolys.append(tuple(c.lift(level).rep for c in coeffs))
        return self.generator(level + 1)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.tower is not self:
                raise ValueError("scalar belongs to a different tower")
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(self, 0, Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to a tower scalar")

    # -- representation-level arithmetic ----------------------------------

    def _zero_rep(self, level: int):
        if level == 0:
            return Fraction(0)
        d = len(self._minpolys[level - 1]) - 1
        return tuple(self._zero_rep(level - 1) for _ in range(d))

    def _one_rep(self, level: int):
        if level == 0:
            return Fraction(1)
        d = len(self._minpolys[level - 1]) - 1
        return tuple(
            self._one_rep(level - 1) if i == 0 else self._zero_rep(level - 1)
            for i in range(d)
        )

    def _lift_rep(self, level_from: int, level_to: int, rep):
        while level_from < level_to:
            level_from += 1
            d = len(self._minpolys[level_from - 1]) - 1
            rep = tuple(
                rep if i == 0 else self._zero_rep(level_from - 1) for i in range(d)
            )
        return rep

    def _add_rep(self, level: int, a, b):
        if level == 0:
            return a + b
        return tuple(self._add_rep(level - 1, x, y) for x, y in zip(a, b))

    def _neg_rep(self, level: int, a):
        if level == 0:
            return -a
        return tuple(self._neg_rep(level - 1, x) for x in a)

    def _sub_rep(self, level: int, a, b):
        if level == 0:
            return a - b
        return tuple(self._sub_rep(level - 1, x, y) for x, y in zip(a, b))

    def _mul_rep(self, level: int, a, b):
        if level == 0:
            return a * b
        d = len(a)
        prod = [self._zero_rep(level - 1) for _ in range(2 * d - 1)]
        for i, x in enumerate(a):
            if _is_zero_rep(level - 1, x):
                continue
            for j, y in enumerate(b):
                if _is_zero_rep(level - 1, y):
                    continue
                prod[i + j] = self._add_rep(
                    level - 1, prod[i + j], self._mul_rep(level - 1, x, y)
                )
        return self._reduce_rep(level, prod)

    def _reduce_rep(self, level: int, coeffs: list):
        """Reduce a coefficient list modulo the level's minimal polynomial."""
        m = self._minpolys[level - 1]
        d = len(m) - 1
        for i in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[i]
            if _is_zero_rep(level - 1, top):
                continue
            # minpoly monic: alpha^d = -(m[0] + ... + m[d-1] alpha^{d-1})
            for j in range(d):
                coeffs[i - d + j] = self._sub_rep(
                    level - 1,
                    coeffs[i - d + j],
                    self._mul_rep(level - 1, top, m[j]),
                )
            coeffs[i] = self._zero_rep(level - 1)
        out = coeffs[:d]
        while len(out) < d:
            out.append(self._zero_rep(level - 1))
        return tuple(out)

    def _inv_rep(self, level: int, a):
        if level == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        m = self._minpolys[level - 1]
        # Extended Euclid between the minimal polynomial and a, over the
        # level-(level-1) field; all polynomials as coefficient lists.
        lvl = level - 1
        r0 = list(m)
        r1 = [c for c in a]
        s0 = [self._zero_rep(lvl)]
        s1 = [self._one_rep(lvl)]

        def norm(p):
            while p and _is_zero_rep(lvl, p[-1]):
                p.pop()
            return p

        r1 = norm(r1)
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        while True:
            # divide r0 by r1
            q = [self._zero_rep(lvl) for _ in range(max(len(r0) - len(r1) + 1, 1))]
            rem = list(r0)
            inv_lead = self._inv_rep(lvl, r1[-1])
            while len(rem) >= len(r1) and norm(rem):
                shift = len(rem) - len(r1)
                factor = self._mul_rep(lvl, rem[-1], inv_lead)
                q[shift] = self._add_rep(lvl, q[shift], factor)
                for i, c in enumerate(r1):
                    rem[shift + i] = self._sub_rep(
                        lvl, rem[shift + i], self._mul_rep(lvl, factor, c)
                    )
                rem = norm(rem)
            # s2 = s0 - q*s1
            qs1 = [self._zero_rep(lvl) for _ in range(len(q) + len(s1) - 1)]
            for i, x in enumerate(q):
                if _is_zero_rep(lvl, x):
                    continue
                for j, y in enumerate(s1):
                    qs1[i + j] = self._add_rep(lvl, qs1[i + j], self._mul_rep(lvl, x, y))
            s2 = [
                self._sub_rep(
                    lvl,
                    s0[i] if i < len(s0) else self._zero_rep(lvl),
                    qs1[i] if i < len(qs1) else self._zero_rep(lvl),
                )
                for i in range(max(len(s0), len(qs1), 1))
            ]
            r0, r1 = r1, rem
            s0, s1 = s1, norm(s2) or [self._zero_rep(lvl)]
            if not r1:
                break
        # r0 is the gcd, s0 the cofactor of a
        if len(r0) > 1:
            factor = [Scalar(self, lvl, c) for c in r0]
            raise ZeroDivisor(
                f"reducible minimal polynomial detected at level {level}",
                factor=factor,
            )
        glead_inv = self._inv_rep(lvl, r0[-1])
        inv = [self._mul_rep(lvl, c, glead_inv) for c in s0]
        return self._reduce_rep(level, inv)


class Scalar:
    """An element of a tower field, in normal form."""

    __slots__ = ("tower", "level", "rep")

    def __init__(self, tower: Tower, level: int, rep):
        self.tower = tower
        self.level = level
        self.rep = rep

    # -- coercion ---------------------------------------------------------

    def lift(self, level: int) -> "Scalar":
        if level < self.level:
            raise ValueError("cannot lift downward")
        if level == self.level:
            return self
        return Scalar(
            self.tower, level, self.tower._lift_rep(self.level, level, self.rep)
        )

    def try_lower(self) -> "Scalar":
        """Return the same element at the lowest level that can express it."""
        s = self
        while s.level > 0:
            tail = s.rep[1:]
            if any(not _is_zero_rep(s.level - 1, c) for c in tail):
                break
            s = Scalar(s.tower, s.level - 1, s.rep[0])
        return s

    def _pair(self, other):
        other = self.tower.coerce(other)
        lvl = max(self.level, other.level)
        return self.lift(lvl), other.lift(lvl), lvl

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return _is_zero_rep(self.level, self.rep)

    def is_rational(self) -> bool:
        return self.try_lower().level == 0

    def as_fraction(self) -> Fraction:
        s = self.try_lower()
        if s.level != 0:
            raise ValueError("scalar is not rational")
        return s.rep

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b, lvl = self._pair(other)
        return Scalar(self.tower, lvl, self.tower._add_rep(lvl, a.rep, b.rep))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.tower, self.level, self.tower._neg_rep(self.level, self.rep))

    def __sub__(self, other):
        a, b, lvl = self._pair(other)
        return Scalar(self.tower, lvl, self.tower._sub_rep(lvl, a.rep, b.rep))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b, lvl = self._pair(other)
        return Scalar(self.tower, lvl, self.tower._mul_rep(lvl, a.rep, b.rep))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.tower, self.level, self.tower._inv_rep(self.level, self.rep))

    def __truediv__(self, other):
        other = self.tower.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.tower.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            a, b, lvl = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.rep == b.rep

    def __hash__(self):
        s = self.try_lower()
        return hash((s.level, s.rep))

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        s = self.try_lower()
        if s.level == 0:
            return str(s.rep)

        def fmt(level, rep):
            if level == 0:
                return str(rep)
            name = f"a{level}"
            parts = []
            for i, c in enumerate(rep):
                if _is_zero_rep(level - 1, c):
                    continue
                cs = fmt(level - 1, c)
                if i == 0:
                    parts.append(cs)
                else:
                    mon = name if i == 1 else f"{name}^{i}"
                    parts.append(mon if cs == "1" else f"({cs})*{mon}")
            return " + ".join(parts) if parts else "0"

        return fmt(s.level, s.rep)
