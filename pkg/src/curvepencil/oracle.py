"""Brute-force cross-checks, independent of the pencil machinery.

Two slow but elementary computations validate the theorem-driven paths:

* ``semigroup_from_param`` reads the characteristic exponents straight
  off the Puiseux support of a primitive parametrisation and applies the
  classical generator recursion — no pencils involved.
* ``intersection_brute`` computes an intersection multiplicity by
  root-difference summation and, when both parametrisations are exact,
  also by the x-valuation of the resultant of the two implicit
  equations; the two methods must agree.

These functions are test and CLI plumbing only; no production path
consults them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as igcd

from .config import DEFAULT, Config
from .curves import (PlaneParam, implicit_equation_exact, plane_intersection)
from .errors import EqualBranches, NeedsPrecision, PrecisionExhausted
from .invariants import SemigroupData
from .multipoly import YList, ynormalize, yresultant
from .puiseux import puiseux_branches
from .series import INFINITY
from . import upoly as U


@dataclass
class OracleResult:
    """Outcome of a brute-force computation, tagged with its method."""

    value: int
    method: str
    precision: int | None = None


def _normalised_support(delta: PlaneParam) -> tuple[int, list[int]]:
    """(x-order, certified y-support) of a parametrisation."""
    if delta.axis == "x":
        return 1, []
    return delta.p, delta.yser.support()


def semigroup_from_param(delta: PlaneParam) -> SemigroupData:
    """Semigroup of a primitive plane branch by the classical recursion.

    Characteristic exponents are the y-support exponents where the
    running gcd with the x-order drops; generators follow
    gbar_{i+1} = (e_{i-1}/e_i) gbar_i + beta_{i+1} - beta_i.
    """
    p, support = _normalised_support(delta)
    chars = [p]
    e = [p]
    for exp in support:
        if e[-1] == 1:
            break
        if exp % e[-1]:
            chars.append(exp)
            e.append(igcd(e[-1], exp))
    if e[-1] != 1:
        if delta.axis == "x" or delta.yser.exact:
            raise ValueError(
                "parametrisation is not primitive: support gcd stays above 1"
            )
        raise PrecisionExhausted(
            "characteristic exponents not determined by the certified "
            "support", cap=delta.yser.prec,
        )
    gens = list(chars[:2])
    for i in range(2, len(chars)):
        d = e[i - 2] // e[i - 1]
        gens.append(d * gens[-1] + chars[i] - chars[i - 1])
    return SemigroupData(
        k=1, e=e, generators=gens, char_exponents=chars,
        multiplicity=p,
    )


def _implicit_ylist(delta: PlaneParam) -> YList:
    """Exact reduced implicit equation of a primitive parametrisation."""
    tower = delta.tower
    if delta.axis == "x":
        return ynormalize([[tower.zero, tower.one]])
    if delta.yser.is_exact_zero():
        return ynormalize([[], [tower.one]])
    X, Y = delta.param()
    F, k = implicit_equation_exact(X, Y, tower)
    if k != 1:
        raise ValueError("parametrisation is not primitive")
    return F


def intersection_brute(delta1: PlaneParam, delta2: PlaneParam,
                       config: Config = DEFAULT) -> OracleResult:
    """Intersection multiplicity by root differences and by resultant.

    The resultant route runs only when both parametrisations are exact;
    when both methods run their values must agree.
    """
    value = plane_intersection(delta1, delta2, config)
    methods = ["root-difference"]
    exact1 = delta1.axis == "x" or delta1.yser.exact
    exact2 = delta2.axis == "x" or delta2.yser.exact
    if exact1 and exact2:
        F1 = _implicit_ylist(delta1)
        F2 = _implicit_ylist(delta2)
        res = yresultant(F1, F2, delta1.tower)
        via_resultant = U.valuation_x(res)
        if via_resultant != value:
            raise AssertionError(
                f"oracle methods disagree: root-difference {value}, "
                f"resultant {via_resultant}"
            )
        methods.append("resultant")
    prec = None
    for d in (delta1, delta2):
        if d.axis is None and not d.yser.exact:
            prec = d.yser.prec if prec is None else min(prec, d.yser.prec)
    return OracleResult(value=value, method="+".join(methods), precision=prec)


def curve_intersection(h, delta: PlaneParam, prec: int = 64,
                       config: Config = DEFAULT):
    """Intersection of the curve germ {h = 0} with a branch.

    Sums branch-by-branch contacts weighted by multiplicity; INFINITY
    when the branch is a component of {h = 0}.  ``delta`` may be an
    unreduced parametrisation, in which case the result scales by its
    covering degree.
    """
    tower = delta.tower
    total = 0
    for zeta in puiseux_branches(h, tower, prec, config):
        zp = PlaneParam(tower, axis="x") if zeta.axis == "x" else PlaneParam(
            tower, c=tower.one, p=zeta.exponent, yser=zeta.yser)
        try:
            total += zeta.mult * plane_intersection(delta, zp, config)
        except EqualBranches:
            return INFINITY
    return total
