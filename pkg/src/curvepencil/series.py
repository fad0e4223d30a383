"""Truncated univariate power series with certified valuations.

A series is a sparse dict {exponent: Scalar} together with a precision:
either an integer N (all terms below N are known, nothing above is) or
``None`` meaning the series is an exact polynomial listed in full.

Arithmetic never silently loses precision: every operation computes the
worst-case guaranteed precision of its result.  ``valuation`` therefore
either returns a certified answer (a natural number, or INFINITY for the
exact zero series) or an explicit ``Inconclusive`` marker telling the
caller to retry at higher precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import Scalar, Tower

INFINITY = float("inf")

_BIG = None  # sentinel for "exact" in internal precision arithmetic


@dataclass(frozen=True)
class Inconclusive:
    """Valuation could not be certified below the given precision."""

    precision: int


class PowerSeries:
    __slots__ = ("tower", "terms", "prec")

    def __init__(self, tower: Tower, terms: dict[int, Scalar], prec: int | None):
        self.tower = tower
        if prec is not None:
            terms = {e: c for e, c in terms.items() if e < prec}
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.prec = prec

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, tower: Tower, prec: int | None = None) -> "PowerSeries":
        return cls(tower, {}, prec)

    @classmethod
    def monomial(cls, tower: Tower, coeff, exponent: int,
                 prec: int | None = None) -> "PowerSeries":
        return cls(tower, {exponent: tower.coerce(coeff)}, prec)

    @classmethod
    def from_terms(cls, tower: Tower, terms, prec: int | None = None
                   ) -> "PowerSeries":
        return cls(tower, {e: tower.coerce(c) for e, c in dict(terms).items()}, prec)

    # -- basic queries -----------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_exact_zero(self) -> bool:
        return self.exact and not self.terms

    def _lower_bound(self):
        """Certified lower bound for the valuation (INFINITY if exact zero)."""
        if self.terms:
            return min(self.terms)
        return INFINITY if self.exact else self.prec

    def valuation(self):
        """Certified order in t: natural, INFINITY, or Inconclusive(prec)."""
        if self.terms:
            v = min(self.terms)
            if self.exact or v < self.prec:
                return v
        if self.exact:
            return INFINITY
        return Inconclusive(self.prec)

    def lead(self) -> tuple[int, Scalar]:
        """(valuation, leading coefficient); requires a certified finite valuation."""
        v = self.valuation()
        if isinstance(v, Inconclusive) or v == INFINITY:
            raise ValueError("series has no certified leading term")
        return v, self.terms[v]

    def coefficient(self, e: int) -> Scalar:
        return self.terms.get(e, self.tower.zero)

    def support(self) -> list[int]:
        return sorted(self.terms)

    # -- precision bookkeeping --------------------------------------------

    def truncate(self, prec: int) -> "PowerSeries":
        new = prec if self.prec is None else min(self.prec, prec)
        return PowerSeries(self.tower, self.terms, new)

    @staticmethod
    def _combine_prec(a: "PowerSeries", b: "PowerSeries", mode: str):
        if mode == "add":
            if a.prec is None:
                return b.prec
            if b.prec is None:
                return a.prec
            return min(a.prec, b.prec)
        if mode == "mul":
            if a.is_exact_zero() or b.is_exact_zero():
                return None
            if a.prec is None and b.prec is None:
                return None
            cands = []
            if a.prec is not None:
                lb = b._lower_bound()
                cands.append(None if lb == INFINITY else a.prec + lb)
            if b.prec is not None:
                lb = a._lower_bound()
                cands.append(None if lb == INFINITY else b.prec + lb)
            cands = [c for c in cands if c is not None]
            return min(cands) if cands else None
        raise ValueError(mode)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.tower.zero) + c
        return PowerSeries(self.tower, terms, self._combine_prec(self, other, "add"))

    def __neg__(self):
        return PowerSeries(self.tower, {e: -c for e, c in self.terms.items()},
                           self.prec)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        prec = self._combine_prec(self, other, "mul")
        terms: dict[int, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                if e in terms:
                    terms[e] = terms[e] + c1 * c2
                else:
                    terms[e] = c1 * c2
        return PowerSeries(self.tower, terms, prec)

    def scale(self, c) -> "PowerSeries":
        c = self.tower.coerce(c)
        return PowerSeries(self.tower,
                           {e: c * v for e, v in self.terms.items()}, self.prec)

    def shift(self, n: int) -> "PowerSeries":
        """Multiply by t^n."""
        return PowerSeries(self.tower, {e + n: c for e, c in self.terms.items()},
                           None if self.prec is None else self.prec + n)

    def dilate(self, n: int) -> "PowerSeries":
        """Substitute t -> t^n (n >= 1): exponents scale by n."""
        if n < 1:
            raise ValueError("dilation factor must be positive")
        return PowerSeries(self.tower, {e * n: c for e, c in self.terms.items()},
                           None if self.prec is None else self.prec * n)

    def scale_dilate(self, rho, n: int) -> "PowerSeries":
        """Substitute t -> rho * t^n for a scalar rho and n >= 1."""
        if n < 1:
            raise ValueError("dilation factor must be positive")
        rho = self.tower.coerce(rho)
        return PowerSeries(self.tower,
                           {e * n: c * rho ** e for e, c in self.terms.items()},
                           None if self.prec is None else self.prec * n)

    def deflate(self, n: int) -> "PowerSeries":
        """Substitute t^n -> t; every exponent must be divisible by n."""
        if n < 1:
            raise ValueError("deflation factor must be positive")
        if any(e % n for e in self.terms):
            raise ValueError("support not divisible by deflation factor")
        prec = None if self.prec is None else -(-self.prec // n)
        return PowerSeries(self.tower,
                           {e // n: c for e, c in self.terms.items()}, prec)

    def __pow__(self, n: int) -> "PowerSeries":
        if n < 0:
            raise ValueError("negative series power")
        result = PowerSeries(self.tower, {0: self.tower.one}, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """Substitute t -> inner(s); inner must have valuation >= 1."""
        ilb = inner._lower_bound()
        if ilb != INFINITY and ilb < 1:
            raise ValueError("inner series must vanish at 0")
        exps = sorted(self.terms)
        # precision of the result
        if self.prec is None:
            prec = None
        else:
            prec = None if ilb == INFINITY else self.prec * max(ilb, 1)
        result = PowerSeries.zero(self.tower, prec)
        power = PowerSeries(self.tower, {0: self.tower.one}, None)
        cur_e = 0
        for e in exps:
            power = power * inner ** (e - cur_e)
            cur_e = e
            result = result + power.scale(self.terms[e])
        if prec is not None:
            result = result.truncate(prec)
        # inner's own precision limits the composition too
        if inner.prec is not None and exps:
            e_min_pos = min((e for e in exps if e >= 1), default=None)
            if e_min_pos is not None:
                lim = inner.prec + (e_min_pos - 1) * max(ilb, 1)
                result = result.truncate(lim)
        return result

    def invert_unit(self, prec: int) -> "PowerSeries":
        """Inverse of a series with nonzero constant term, mod t^prec."""
        c0 = self.coefficient(0)
        if c0.is_zero():
            raise ValueError("series is not a unit")
        inv0 = c0.inverse()
        res = PowerSeries(self.tower, {0: inv0}, 1)
        n = 1
        one = PowerSeries(self.tower, {0: self.tower.one}, None)
        while n < prec:
            n = min(2 * n, prec)
            a = self.truncate(n)
            res = PowerSeries(self.tower, res.terms, n)
            res = (res + res * (one - a * res)).truncate(n)
        if self.prec is not None:
            res = res.truncate(self.prec)
        return res

    def nth_root_unit(self, n: int, prec: int) -> "PowerSeries":
        """(1 + u)^(1/n) for a series with constant term 1, mod t^prec.

        Binomial expansion; exact in the coefficient field.
        """
        if self.coefficient(0) != self.tower.one:
            raise ValueError("constant term must be 1")
        u = self - PowerSeries(self.tower, {0: self.tower.one}, None)
        u = u.truncate(prec)
        v = u._lower_bound()
        if v == INFINITY:
            out = PowerSeries(self.tower, {0: self.tower.one}, None)
            return out if self.prec is None else out.truncate(min(prec, self.prec))
        result = PowerSeries(self.tower, {0: self.tower.one}, prec)
        upow = PowerSeries(self.tower, {0: self.tower.one}, None)
        coeff = Fraction(1)
        j = 0
        while (j + 1) * v < prec:
            j += 1
            coeff = coeff * (Fraction(1, n) - (j - 1)) / j
            upow = (upow * u).truncate(prec)
            result = result + upow.scale(self.tower.rational(coeff))
        if self.prec is not None:
            result = result.truncate(self.prec)
        return result

    # -- display ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.terms == other.terms and self.prec == other.prec

    def __repr__(self):
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            cs = str(c)
            if e == 0:
                parts.append(cs)
            else:
                mon = "t" if e == 1 else f"t^{e}"
                parts.append(mon if cs == "1" else f"({cs})*{mon}")
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.exact else f" + O(t^{self.prec})"
        return body + tail
