"""Topology of the discriminant curve of a finite plane morphism.

The critical curve of phi = (f, g) is the vanishing of the Jacobian
determinant; its branches that are not components of {f g = 0} push
forward to the branches of the discriminant.  Each such branch gets the
full treatment of the library: its image semigroup through the pencil
order recursion AND, independently, through the quotient-only formula
(the two are asserted equal), and pairwise intersection multiplicities
of the images through the separation-level search.

Membership of a critical branch in {f g = 0} is decided at the factor
level: every squarefree factor of the Jacobian is split by a gcd against
f g into its shared and coprime parts, so no infinite-order check on a
truncated series is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT, Config
from .curves import BranchParam, Morphism
from .errors import (DegenerateMorphism, InconsistentDegree, InputError,
                     NeedsPrecision, PrecisionExhausted)
from .invariants import semigroup_from_pencil, semigroup_from_quotients
from .multipoly import (MultiPoly, to_ylist, ydeg, ydivexact, ygcd,
                        ynormalize, ysquarefree)
from .pencil import PencilSequence
from .puiseux import PlaneBranch, puiseux_branches
from .multibranch import TopologyReport, covering_degree, topology_report
from . import upoly as U


@dataclass
class CriticalSet:
    """The critical curve of a plane morphism, split into branches.

    ``branches`` lists (branch, excluded, reason): excluded branches are
    exactly the components shared with {f g = 0}, which do not
    contribute to the discriminant.
    """

    jacobian: MultiPoly
    branches: list = field(default_factory=list)

    def retained(self) -> list:
        return [b for b, excl, _ in self.branches if not excl]


def critical_branches(morphism: Morphism, prec: int = 64,
                      config: Config = DEFAULT) -> CriticalSet:
    """Branch decomposition of the Jacobian curve, with exclusions."""
    if morphism.nvars != 2:
        raise InputError(
            "critical branch extraction needs a plane source; supply "
            "critical branch parametrisations for surface sources"
        )
    tower = morphism.tower
    jac = morphism.jacobian_det()
    if jac.is_zero():
        raise DegenerateMorphism(
            "the Jacobian determinant vanishes identically"
        )
    crit = CriticalSet(jacobian=jac)
    H = to_ylist(jac)
    fg = to_ylist(morphism.f * morphism.g)
    a = min(U.valuation_x(col) for col in H if col)
    if a >= 1:
        # vertical axis component: excluded iff x divides f*g
        on_axis = any(col and not col[0].is_zero() for col in fg)
        crit.branches.append((
            PlaneBranch(tower, axis="x", mult=a),
            not on_axis,
            None if on_axis else "component of {fg = 0}",
        ))
        H = ynormalize([col[a:] if col else [] for col in H])
    if ydeg(H) <= 0:
        return crit
    for factor, mult in ysquarefree(H):
        shared = ygcd(factor, fg)
        if ydeg(shared) > 0:
            kept = ydivexact(factor, shared)
        else:
            kept = factor
            shared = None
        for part, excluded in ((kept, False), (shared, True)):
            if part is None or ydeg(part) <= 0:
                continue
            for br in puiseux_branches(part, tower, prec, config):
                br.mult = mult
                crit.branches.append((
                    br, excluded,
                    "component of {fg = 0}" if excluded else None,
                ))
    return crit


def _hironaka_quotients(seq: PencilSequence) -> list[Fraction]:
    """Quotients mu_i / nu_i through the completion level, nu recursed."""
    seq.run_to_completion()
    if seq.complete_level is None:
        raise InconsistentDegree("pencil ended before the order gcd reached k")
    out = []
    nu = seq.mu_init
    for i in range(seq.complete_level + 1):
        out.append(Fraction(seq.mus[i], nu))
        if i < len(seq.steps):
            nu = seq.steps[i].q * seq.steps[i].nu
        else:
            q = Fraction(seq.mus[i], nu).numerator
            nu = q * nu
    return out


def _branch_routes_agree(morphism: Morphism, branch: BranchParam,
                         config: Config):
    """Assert the order recursion and the quotient route give the same m."""
    for prec in config.precisions():
        try:
            image, k = covering_degree(morphism, branch, prec, config)
            if image.axis == "x":
                return
            seq = PencilSequence(morphism, branch, k=k, prec=prec,
                                 config=config)
            sem = semigroup_from_pencil(seq)
            if sem.axis:
                return
            via_quotients = semigroup_from_quotients(
                seq.mu_init, _hironaka_quotients(seq), k)
            assert via_quotients == sem.m, (
                f"quotient route gives {via_quotients}, order recursion "
                f"gives {sem.m}"
            )
            return
        except NeedsPrecision:
            continue
    raise PrecisionExhausted(
        f"semigroup routes undecided at precision cap "
        f"{config.precision_cap}", cap=config.precision_cap,
    )


def discriminant_topology(morphism: Morphism, critical=None,
                          fibre_branches=None, config: Config = DEFAULT
                          ) -> TopologyReport:
    """Full topology report of the discriminant curve.

    For plane sources the critical branches are computed; for surface
    sources ``critical`` must be a list of BranchParam parametrisations
    of the critical branches (already excluding {f g = 0} components).
    Every branch's semigroup is validated through two independent
    recursions before the report is assembled.
    """
    if critical is None:
        params = None
        for prec in config.precisions():
            try:
                crit = critical_branches(morphism, prec, config)
                params = [BranchParam(morphism.tower, b.param())
                          for b in crit.retained()]
                break
            except NeedsPrecision:
                continue
        if params is None:
            raise PrecisionExhausted(
                f"critical branches undecided at precision cap "
                f"{config.precision_cap}", cap=config.precision_cap,
            )
    else:
        params = list(critical)
    named = [(f"c{i + 1}", b) for i, b in enumerate(params)]
    for _, branch in named:
        _branch_routes_agree(morphism, branch, config)
    return topology_report(morphism, named, fibre_branches, config)
