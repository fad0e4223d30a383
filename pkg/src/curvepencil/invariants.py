"""Numerical invariants of an image branch from its pencil orders.

From the orders mu_{-1}, mu_0, ... of an iterated pencil along a source
branch covering its image with degree k, two parallel recursions recover
the topological type of the image branch:

    m_{i+1}     = d_i m_i + mu_{i+1}/k - p_i mu_i/k       (semigroup values)
    mtilde_{i+1} = mtilde_i + mu_{i+1}/k - p_i mu_i/k     (char. exponents)

with m_{-1} = mu_{-1}/k, e_{-1} = m_{-1}, e_i = gcd(e_{i-1}, m_i) and
d_i = e_{i-1}/e_i.  The values m_i with d_i > 1, together with m_{-1},
generate the semigroup; the corresponding mtilde_i are the characteristic
exponents.  The data is complete as soon as e_i = 1, equivalently when
gcd(mu_{-1}, ..., mu_i) = k.

An independent route expresses the same semigroup values through the
Hironaka quotients r_i alone; the two must agree and both are exposed so
callers can cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd

from .errors import InconsistentDegree
from .pencil import PencilSequence


@dataclass
class SemigroupData:
    """Topological type of one image branch."""

    k: int
    axis: bool = False
    orders: list = field(default_factory=list)       # mu_{-1}, mu_0, ...
    m: list = field(default_factory=list)            # m_{-1}, m_0, ...
    mtilde: list = field(default_factory=list)       # same indexing
    e: list = field(default_factory=list)            # e_{-1}, e_0, ...
    d: list = field(default_factory=list)            # d_0, d_1, ...
    generators: list = field(default_factory=list)
    char_exponents: list = field(default_factory=list)
    multiplicity: int = 0                            # m_{-1}

    def semigroup_elements(self, bound: int) -> list[int]:
        """All semigroup elements below the bound, for inspection."""
        reachable = {0}
        for g in self.generators:
            new = set()
            for s in reachable:
                v = s
                while v < bound:
                    new.add(v)
                    v += g
            reachable = new
        return sorted(v for v in reachable if v < bound)


def _axis_data(k: int, mu_init: int) -> SemigroupData:
    return SemigroupData(k=k, axis=True, orders=[mu_init], m=[mu_init // k],
                         mtilde=[mu_init // k], e=[mu_init // k], d=[],
                         generators=[1], char_exponents=[1], multiplicity=1)


def semigroup_from_pencil(seq: PencilSequence) -> SemigroupData:
    """Semigroup and characteristic exponents of the image branch.

    Advances the pencil to completeness if needed.  Raises
    InconsistentDegree if the pencil terminates before the order gcd
    comes down to k.
    """
    k = seq.k
    if seq.termination == "axis":
        return _axis_data(k, seq.mu_init)
    seq.run_to_completion()
    if seq.complete_level is None:
        raise InconsistentDegree(
            f"pencil ended with order gcd above k={k}; "
            f"the covering degree is understated"
        )
    top = seq.complete_level
    mus = [seq.mu_init] + seq.mus[:top + 1]
    # orders are divisible by k (enforced step by step), so everything
    # below stays integral
    m = [seq.mu_init // k]
    mtilde = [seq.mu_init // k]
    e = [m[0]]
    d: list[int] = []
    for i in range(top + 1):
        mu_i = seq.mus[i] // k
        if i == 0:
            m.append(mu_i)
            mtilde.append(mu_i)
        else:
            p_prev = seq.steps[i - 1].p
            delta = mu_i - p_prev * (seq.mus[i - 1] // k)
            m.append(d[-1] * m[-1] + delta)
            mtilde.append(mtilde[-1] + delta)
        e.append(igcd(e[-1], m[-1]))
        d.append(e[-2] // e[-1])
    gens = [m[0]]
    chars = [mtilde[0]]
    for i in range(len(d)):
        if d[i] > 1:
            gens.append(m[i + 1])
            chars.append(mtilde[i + 1])
    return SemigroupData(
        k=k, orders=mus, m=m, mtilde=mtilde, e=e, d=d, generators=gens,
        char_exponents=chars, multiplicity=m[0],
    )


def semigroup_from_quotients(mu_init: int, quotients: list[Fraction],
                             k: int = 1) -> list[int]:
    """Semigroup values m_{-1}, m_0, ... from the Hironaka quotients alone.

    Independent of the order recursion: uses
    m_{i+1} = d_i m_i + (r_{i+1} - 1) (prod q_j, j <= i) m_{-1}
    where r_i is the i-th quotient and q_j its reduced numerator.  The
    first quotient gives m_0 = r_0 m_{-1}.
    """
    if mu_init % k:
        raise InconsistentDegree(
            f"initial order {mu_init} not divisible by k={k}"
        )
    m0 = Fraction(mu_init, k)
    m = [m0]
    e = [m0]
    qprod = 1
    for i, r in enumerate(quotients):
        if i == 0:
            m.append(r * m[0])
        else:
            d_prev = e[-2] / e[-1]
            m.append(d_prev * m[-1] + (r - 1) * qprod * m[0])
        qprod *= r.numerator
        e.append(Fraction(igcd(e[-1].numerator * m[-1].denominator,
                               m[-1].numerator * e[-1].denominator),
                          e[-1].denominator * m[-1].denominator))
    out = []
    for v in m:
        if v.denominator != 1:
            raise InconsistentDegree(f"non-integral semigroup value {v}")
        out.append(int(v))
    return out
