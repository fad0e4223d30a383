"""Iterated pencils along a branch: orders, quotients, and member curves.

Given a morphism (f, g) and a source branch, the engine tracks the
composed series F_i = f_i(branch), G_i = g_i(branch) of the recursively
built pair

    f_{i+1} = f_i^{q_i},    g_{i+1} = g_i^{p_i} - a_{i+1} f_i^{q_i},

where ord G_i / ord F_i = q_i / p_i in lowest terms and the constant
a_{i+1} is chosen to cancel the leading terms.  Each step raises the
contact order; the recorded orders mu_i = ord G_i drive the semigroup
and characteristic-exponent recursions, while the polynomials g_i are
the pencil members whose fibres feed the pairwise-intersection search.

Components are swapped up front if needed so ord F_0 <= ord G_0; the
swap is recorded because fibre computations must use the same
orientation for both branches of a pair.  Callers comparing two
branches can force a fixed orientation with the ``swap`` argument so
both sequences live in the same image coordinates.

Termination:
  * "axis":  one composed component vanishes identically at level 0;
             the image is a coordinate axis.
  * "infinite_quotient": G_{i+1} vanishes identically at a later level;
             the image branch is a branch of that pencil member.
  * gcd(mu_-1, ..., mu_i) reaching the covering degree k marks the
    semigroup data complete ("gcd_reached_k"); levels beyond it can
    still be computed on demand for the separation search.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .config import DEFAULT, Config
from .curves import BranchParam, Morphism, certified_valuation
from .errors import (InconsistentDegree, MaxIterationsExceeded,
                     NonFiniteAlongBranch)
from .multipoly import MultiPoly
from .series import INFINITY, PowerSeries


class PencilStep:
    """Data of one pencil step i: orders, reduced quotient, and a_{i+1}."""

    __slots__ = ("index", "nu", "mu", "p", "q", "a")

    def __init__(self, index: int, nu: int, mu: int, p: int, q: int, a):
        self.index = index
        self.nu = nu      # ord F_i
        self.mu = mu      # ord G_i
        self.p = p
        self.q = q
        self.a = a        # a_{i+1}

    @property
    def quotient(self) -> Fraction:
        return Fraction(self.mu, self.nu)

    def __repr__(self):
        return (f"PencilStep({self.index}: mu={self.mu}, nu={self.nu}, "
                f"q/p={self.q}/{self.p})")


class PencilSequence:
    """Lazily extensible pencil data for one branch under one morphism."""

    def __init__(self, morphism: Morphism, branch: BranchParam, k: int = 1,
                 prec: int = 64, config: Config = DEFAULT,
                 swap: bool | None = None):
        self.config = config
        self.branch = branch
        self.k = k
        self.prec = prec
        tower = morphism.tower
        self.tower = tower
        F, G = morphism.on_branch(branch)
        vF = certified_valuation(F)
        vG = certified_valuation(G)
        if vF == INFINITY and vG == INFINITY:
            raise NonFiniteAlongBranch(
                "both morphism components vanish along the branch"
            )
        if swap is None:
            self.swapped = False
            if vG < vF or vF == INFINITY:
                F, G = G, F
                vF, vG = vG, vF
                self.swapped = True
        else:
            self.swapped = bool(swap)
            if self.swapped:
                F, G = G, F
                vF, vG = vG, vF
            if vF == INFINITY:
                raise NonFiniteAlongBranch(
                    "the first component vanishes along the branch in the "
                    "forced orientation"
                )
        self.f = morphism.g if self.swapped else morphism.f
        self.g = morphism.f if self.swapped else morphism.g
        self.mu_init = vF                      # mu_{-1}
        self.mus: list = []                    # mu_0, mu_1, ...
        self.steps: list[PencilStep] = []
        self.termination: str | None = None    # "axis" | "infinite_quotient"
        self.term_level: int | None = None
        self.complete_level: int | None = None  # first i with eps_i == k
        self._F = F
        self._G = G
        self._members: list[tuple[MultiPoly, MultiPoly]] = [(self.f, self.g)]
        if vF % k:
            raise InconsistentDegree(
                f"ord {vF} of the first component is not divisible by k={k}"
            )
        self._consume_order(vG, level=0)

    # -- iteration --------------------------------------------------------

    def _consume_order(self, vG, level: int):
        if vG == INFINITY:
            if level == 0:
                self.termination = "axis"
            else:
                self.termination = "infinite_quotient"
            self.term_level = level
            return
        if vG % self.k:
            raise InconsistentDegree(
                f"pencil order {vG} at level {level} is not divisible "
                f"by k={self.k}"
            )
        self.mus.append(vG)
        eps = self.mu_init
        for m in self.mus:
            eps = igcd(eps, m)
        if eps < self.k:
            raise InconsistentDegree(
                f"gcd of pencil orders dropped to {eps} below k={self.k}"
            )
        if eps == self.k and self.complete_level is None:
            self.complete_level = level

    def levels_computed(self) -> int:
        """Number of mu_i values available (indices 0 .. n-1)."""
        return len(self.mus)

    def ensure_level(self, level: int):
        """Extend the sequence so mu_level exists, unless terminated earlier.

        Returns True if mu_level is available, False if the pencil
        terminated at a smaller level.
        """
        while self.levels_computed() <= level:
            if self.termination is not None:
                return False
            if len(self.steps) >= self.config.max_iterations:
                raise MaxIterationsExceeded(
                    f"pencil exceeded {self.config.max_iterations} steps"
                )
            self._step()
        return True

    def _step(self):
        i = len(self.steps)
        nu = self.mu_init if i == 0 else self.steps[-1].q * self.steps[-1].nu
        mu = self.mus[i]
        g = igcd(mu, nu)
        q, p = mu // g, nu // g
        _, lcF = self._F.lead()
        _, lcG = self._G.lead()
        a = lcG ** p / lcF ** q
        F_next = self._F ** q
        G_next = self._G ** p - F_next.scale(a)
        self.steps.append(PencilStep(i, nu, mu, p, q, a))
        self._F = F_next
        self._G = G_next
        self._consume_order(certified_valuation(G_next), level=i + 1)

    def run_to_completion(self):
        """Advance until the semigroup data is complete or the pencil ends."""
        while self.termination is None and self.complete_level is None:
            if not self.ensure_level(self.levels_computed()):
                break
        return self

    # -- pencil member polynomials ---------------------------------------

    def member(self, level: int) -> MultiPoly:
        """The polynomial g_level on the source (g_0 is the swapped g)."""
        while len(self._members) <= level:
            i = len(self._members) - 1
            if i >= len(self.steps):
                raise ValueError(
                    f"pencil member {level} needs step {i} to be computed"
                )
            st = self.steps[i]
            f_i, g_i = self._members[-1]
            f_next = f_i ** st.q
            g_next = g_i ** st.p - f_next.scale(st.a)
            self._members.append((f_next, g_next))
        return self._members[level][1]

    # -- derived quantities ------------------------------------------------

    def quotients(self) -> list[Fraction]:
        """Hironaka quotients mu_i / nu_i for the computed steps."""
        return [s.quotient for s in self.steps]

    def all_orders(self) -> list:
        """mu_{-1}, mu_0, mu_1, ... (finite values only)."""
        return [self.mu_init] + list(self.mus)

    def __repr__(self):
        return (f"PencilSequence(mu={self.all_orders()}, "
                f"swapped={self.swapped}, termination={self.termination!r}, "
                f"complete_level={self.complete_level})")
