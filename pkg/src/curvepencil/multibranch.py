"""Pairwise intersection of image branches via the separation-level search.

Two source branches with distinct image branches delta, delta' are
separated by a branch zeta of some pencil fibre {g_l = 0}: at the
smallest level l some fibre branch has

    [delta, zeta] / I(delta, x)  !=  [delta', zeta] / I(delta', x),

and then [delta, delta'] = min{ e'_{l-1} [delta, zeta],
e_{l-1} [delta', zeta] } with e, e' the gcd chains of the two branches'
semigroup values.  Each [., zeta] is the contact of the (possibly
multiple) image parametrisation with the reduced image of the fibre
branch, divided by the covering degree; the contact can be infinite
when zeta coincides with one of the images, so ratios live in the
rationals extended by infinity.

Both branches are put in a common orientation (the first branch's);
the e'-chain is recomputed from raw pencil-order gcds, so the final
value is obtained through two independent recursions and cross-checked,
together with the epsilon-form of the same minimum and, when the two
pencil sequences themselves diverge, the single-term divergence
shortcut.

Fibre branches come from Newton-Puiseux expansion of the pencil member
when the source is a plane; for higher-dimensional (normal surface)
sources the caller must supply fibre parametrisations per level, which
are validated by an order-of-vanishing check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd

from .config import DEFAULT, Config
from .curves import (BranchParam, Morphism, PlaneParam, certified_valuation,
                     direct_image, ord_along, plane_intersection,
                     plane_params_equal, pure_power_form)
from .errors import (CurvePencilError, EqualBranches, FibreBranchesRequired,
                     ImagesEqual, InputError, MaxIterationsExceeded,
                     NeedsPrecision, PrecisionExhausted)
from .invariants import SemigroupData, semigroup_from_pencil
from .pencil import PencilSequence
from .puiseux import puiseux_branches
from .series import INFINITY


@dataclass
class SeparationWitness:
    """The fibre branch that separates two image branches.

    ``witness`` is the separating branch of the level-``level`` fibre
    (a Puiseux branch for plane sources, the supplied parametrisation
    for surface sources); ``witness_image`` its reduced image branch.
    ``ratio_first``/``ratio_second`` are the normalised contacts of the
    two images with it; ``candidate_first`` = e'_{l-1} [delta, zeta] and
    ``candidate_second`` = e_{l-1} [delta', zeta] are the two products
    whose minimum is the intersection multiplicity, ``attained`` naming
    the smaller one.
    """

    level: int
    witness: object
    witness_image: PlaneParam | None
    ratio_first: object          # Fraction or INFINITY
    ratio_second: object
    candidate_first: object      # int or INFINITY
    candidate_second: object
    attained: str                # "first" | "second" | "both"
    note: str | None = None


@dataclass
class BranchReport:
    """Per-branch entry of a topology report."""

    name: str
    k: int | None = None
    image: PlaneParam | None = None
    semigroup: SemigroupData | None = None
    error: str | None = None


@dataclass
class PairEntry:
    """One cell of the pairwise intersection matrix."""

    kind: str                    # "value" | "equal" | "self" | "error"
    value: int | None = None
    witness: SeparationWitness | None = None
    error: str | None = None


@dataclass
class TopologyReport:
    """Topological type of a finite family of image branches."""

    branches: list[BranchReport] = field(default_factory=list)
    pairs: dict = field(default_factory=dict)
    classes: list[list[str]] = field(default_factory=list)


# -- covering degree and image parametrisations ---------------------------

def covering_degree(morphism: Morphism, branch: BranchParam, prec: int,
                    config: Config = DEFAULT) -> tuple[PlaneParam, int]:
    """(reduced image branch, degree of the parametrisation onto it)."""
    X, Y = morphism.on_branch(branch)
    vx = certified_valuation(X)
    vy = certified_valuation(Y)
    if vx == INFINITY and vy == INFINITY:
        raise CurvePencilError(
            "both morphism components vanish along the branch"
        )
    if vx == INFINITY:
        return PlaneParam(morphism.tower, axis="x"), vy
    if vy == INFINITY:
        return PlaneParam.x_axis(morphism.tower), vx
    pp = direct_image(morphism, branch, prec, config, primitive=True)
    return pp, vx // pp.p


def _unreduced_image(morphism: Morphism, branch: BranchParam, prec: int
                     ) -> PlaneParam:
    """Normalised but not primitivised image parametrisation."""
    X, Y = morphism.on_branch(branch)
    return pure_power_form(X, Y, prec)


def _contact(unreduced: PlaneParam, zeta: PlaneParam,
             config: Config):
    """ord along the source of the reduced equation of zeta (INFINITY if
    zeta is the image branch itself)."""
    try:
        return plane_intersection(unreduced, zeta, config)
    except EqualBranches:
        return INFINITY


# -- chains ---------------------------------------------------------------

def _eps_at(seq: PencilSequence, i: int) -> int:
    """gcd(mu_-1, ..., mu_i) of the pencil orders (i = -1 gives mu_-1)."""
    if i >= 0 and seq.termination is None:
        seq.ensure_level(i)
    g = seq.mu_init
    for m in seq.mus[:i + 1]:
        g = igcd(g, m)
    return g


def _e_at(sem: SemigroupData, i: int) -> int:
    """e_i of the semigroup gcd chain, extended by 1 past completion."""
    idx = i + 1
    if 0 <= idx < len(sem.e):
        return sem.e[idx]
    return 1


# -- fibre branch sources -------------------------------------------------

def _fibre_source(morphism: Morphism, seq: PencilSequence,
                  supplied, prec: int, config: Config):
    """Callable level -> [(fibre branch, BranchParam)], per source type."""
    tower = morphism.tower
    if morphism.nvars == 2:
        def plane_fibre(level: int):
            member = seq.member(level)
            out = []
            for br in puiseux_branches(member, tower, prec, config):
                out.append((br, BranchParam(tower, br.param())))
            return out
        return plane_fibre

    def surface_fibre(level: int):
        if supplied is None or level not in supplied:
            raise FibreBranchesRequired(
                f"the source is not a plane: the branches of the level-"
                f"{level} fibre must be supplied", level=level,
            )
        member = seq.member(level)
        out = []
        for rho in supplied[level]:
            if ord_along(member, rho) != INFINITY:
                raise InputError(
                    f"a supplied fibre branch does not lie on the "
                    f"level-{level} pencil member"
                )
            out.append((rho, rho))
        return out
    return surface_fibre


# -- the pair computation -------------------------------------------------

def _as_natural(x, what: str) -> int:
    if x == INFINITY:
        return x
    frac = Fraction(x)
    if frac.denominator != 1:
        raise CurvePencilError(f"{what} is not an integer: {frac}")
    return int(frac)


def _divergence_level(seq1: PencilSequence, seq2: PencilSequence,
                      bound: int) -> int | None:
    """First r >= 1 with differing step data below the bound, if any."""
    for i in range(min(len(seq1.steps), len(seq2.steps), bound)):
        s1, s2 = seq1.steps[i], seq2.steps[i]
        if (s1.p, s1.q) != (s2.p, s2.q) or s1.a != s2.a:
            return i + 1
    return None


def _max_contact_image(fibre_list, unreduced: PlaneParam, morphism: Morphism,
                       prec: int, config: Config) -> PlaneParam:
    """Reduced image of the fibre branch with the highest contact."""
    best = None
    best_n = None
    for _, rho in fibre_list:
        img = direct_image(morphism, rho, prec, config, primitive=True)
        n = _contact(unreduced, img, config)
        if best_n is None or n > best_n:
            best, best_n = img, n
    return best


def _check_divergence_shortcut(value, level, seq1, seq2c, fib1, morphism_o,
                               b1u, b2u, sem1, k1, k2, prec, config):
    """Assert the single-term formula when the two pencils diverge."""
    if morphism_o.nvars != 2:
        return
    seq2c.ensure_level(level)
    r = _divergence_level(seq1, seq2c, level)
    if r is None:
        return
    e1 = _e_at(sem1, r - 1)
    e2 = _eps_at(seq2c, r - 1) // k2
    zeta1 = _max_contact_image(fib1(r), b1u, morphism_o, prec, config)
    fib2 = _fibre_source(morphism_o, seq2c, None, prec, config)
    zeta2 = _max_contact_image(fib2(r), b2u, morphism_o, prec, config)
    n12 = _contact(b1u, zeta2, config)
    n21 = _contact(b2u, zeta1, config)
    via_first = (INFINITY if n12 == INFINITY
                 else _as_natural(Fraction(e2 * n12, k1),
                                  "divergence shortcut (first form)"))
    via_second = (INFINITY if n21 == INFINITY
                  else _as_natural(Fraction(e1 * n21, k2),
                                   "divergence shortcut (second form)"))
    assert via_first == value and via_second == value, (
        f"divergence shortcut at step {r} gives {via_first}/{via_second}, "
        f"search gave {value}"
    )


def _pair_at(morphism: Morphism, gamma1: BranchParam, gamma2: BranchParam,
             supplied, prec: int, config: Config
             ) -> tuple[int, SeparationWitness]:
    tower = morphism.tower
    d1, k1 = covering_degree(morphism, gamma1, prec, config)
    d2, k2 = covering_degree(morphism, gamma2, prec, config)
    try:
        if plane_params_equal(d1, d2, config):
            raise ImagesEqual("the two image branches coincide")
    except NeedsPrecision:
        pass  # the search itself will demand precision if it matters

    seq1 = PencilSequence(morphism, gamma1, k=k1, prec=prec, config=config)
    morphism_o = Morphism(tower, seq1.f, seq1.g)
    od1, _ = covering_degree(morphism_o, gamma1, prec, config)
    od2, _ = covering_degree(morphism_o, gamma2, prec, config)
    if od1.axis == "x" or od2.axis == "x":
        # one image is the vertical axis of the working coordinates: the
        # iterated pencils are not defined there, but the intersection is
        # just the other branch's x-order
        try:
            value = plane_intersection(od1, od2, config)
        except EqualBranches:
            raise ImagesEqual("the two image branches coincide")
        witness = SeparationWitness(
            level=0, witness=None, witness_image=None,
            ratio_first=None, ratio_second=None,
            candidate_first=value, candidate_second=value, attained="both",
            note="axis image: computed directly, no fibre search needed",
        )
        return value, witness

    b1u = _unreduced_image(morphism_o, gamma1, prec)
    b2u = _unreduced_image(morphism_o, gamma2, prec)
    F2, _ = morphism_o.on_branch(gamma2)
    ordF2 = certified_valuation(F2)
    sem1 = semigroup_from_pencil(seq1)
    seq2_nat = PencilSequence(morphism, gamma2, k=k2, prec=prec,
                              config=config)
    if seq2_nat.swapped == seq1.swapped:
        seq2c = seq2_nat
    else:
        seq2c = PencilSequence(morphism, gamma2, k=k2, prec=prec,
                               config=config, swap=seq1.swapped)
    fib1 = _fibre_source(morphism_o, seq1, supplied, prec, config)

    level = 0
    while True:
        if level > config.max_iterations:
            raise MaxIterationsExceeded(
                f"no separating fibre branch within "
                f"{config.max_iterations} pencil levels"
            )
        if seq1.termination is not None and level > seq1.term_level:
            # the image is a component of the terminal fibre; staying
            # unseparated through that fibre certifies equality
            raise ImagesEqual(
                "the two image branches coincide (no separation through "
                "the terminal pencil fibre)"
            )
        if seq1.termination is None:
            seq1.ensure_level(level)
        found = None
        for rho, rho_param in fib1(level):
            img = direct_image(morphism_o, rho_param, prec, config,
                               primitive=True)
            n1 = _contact(b1u, img, config)
            n2 = _contact(b2u, img, config)
            r1 = INFINITY if n1 == INFINITY else Fraction(n1, seq1.mu_init)
            r2 = INFINITY if n2 == INFINITY else Fraction(n2, ordF2)
            if r1 != r2:
                found = (rho, img, n1, n2, r1, r2)
                break
        if found is not None:
            break
        level += 1

    rho, img, n1, n2, r1, r2 = found
    e1 = _e_at(sem1, level - 1)
    eps2 = _eps_at(seq2c, level - 1)
    e2 = eps2 // k2
    if seq2c is seq2_nat:
        # intrinsic chain of the second branch must match the order-gcd route
        sem2 = semigroup_from_pencil(seq2_nat)
        assert _e_at(sem2, level - 1) == e2, (
            f"e'-chain mismatch at level {level - 1}: "
            f"{_e_at(sem2, level - 1)} vs {e2}"
        )
    cand1 = (INFINITY if n1 == INFINITY
             else _as_natural(Fraction(e2 * n1, k1), "candidate e'[d,z]"))
    cand2 = (INFINITY if n2 == INFINITY
             else _as_natural(Fraction(e1 * n2, k2), "candidate e[d',z]"))
    if cand1 == INFINITY and cand2 == INFINITY:
        raise ImagesEqual("both candidate products are infinite")
    value = min(cand1, cand2)

    # epsilon-form of the same minimum, from raw order gcds on both sides
    eps1 = _eps_at(seq1, level - 1)
    alt1 = (INFINITY if n1 == INFINITY
            else _as_natural(Fraction(eps2 * n1, k1 * k2), "eps-form"))
    alt2 = (INFINITY if n2 == INFINITY
            else _as_natural(Fraction(eps1 * n2, k1 * k2), "eps-form"))
    alt = min(alt1, alt2)
    assert alt == value, f"epsilon-form gives {alt}, e-form gives {value}"

    witness = SeparationWitness(
        level=level, witness=rho, witness_image=img,
        ratio_first=r1, ratio_second=r2,
        candidate_first=cand1, candidate_second=cand2,
        attained=("both" if cand1 == cand2
                  else ("first" if cand1 < cand2 else "second")),
    )
    _check_divergence_shortcut(value, level, seq1, seq2c, fib1, morphism_o,
                               b1u, b2u, sem1, k1, k2, prec, config)
    return _as_natural(value, "intersection multiplicity"), witness


# -- public drivers -------------------------------------------------------

def pair_intersection(morphism: Morphism, gamma1: BranchParam,
                      gamma2: BranchParam, fibre_branches=None,
                      config: Config = DEFAULT
                      ) -> tuple[int, SeparationWitness]:
    """Intersection multiplicity of the two image branches, with witness.

    ``fibre_branches`` maps pencil level -> list of BranchParam and is
    required (and validated) when the source is not a plane.
    """
    for prec in config.precisions():
        try:
            return _pair_at(morphism, gamma1, gamma2, fibre_branches,
                            prec, config)
        except NeedsPrecision:
            continue
    raise PrecisionExhausted(
        f"pair intersection undecided at precision cap "
        f"{config.precision_cap}", cap=config.precision_cap,
    )


def separation_level(morphism: Morphism, gamma1: BranchParam,
                     gamma2: BranchParam, fibre_branches=None,
                     config: Config = DEFAULT) -> SeparationWitness:
    """The minimal separating level and its witness fibre branch."""
    _, witness = pair_intersection(morphism, gamma1, gamma2,
                                   fibre_branches, config)
    return witness


def branch_image_data(morphism: Morphism, branch: BranchParam,
                      config: Config = DEFAULT
                      ) -> tuple[PlaneParam, int, SemigroupData]:
    """(reduced image, covering degree, semigroup data) for one branch."""
    for prec in config.precisions():
        try:
            image, k = covering_degree(morphism, branch, prec, config)
            if image.axis == "x":
                sem = SemigroupData(k=k, axis=True, orders=[k], m=[1],
                                    mtilde=[1], e=[1], d=[], generators=[1],
                                    char_exponents=[1], multiplicity=1)
                return image, k, sem
            seq = PencilSequence(morphism, branch, k=k, prec=prec,
                                 config=config)
            return image, k, semigroup_from_pencil(seq)
        except NeedsPrecision:
            continue
    raise PrecisionExhausted(
        f"branch invariants undecided at precision cap "
        f"{config.precision_cap}", cap=config.precision_cap,
    )


def topology_report(morphism: Morphism, branches, fibre_branches=None,
                    config: Config = DEFAULT) -> TopologyReport:
    """Semigroups and pairwise intersections of a family of images.

    ``branches`` is a list of (name, BranchParam) pairs or a dict;
    ``fibre_branches`` optionally maps (name_i, name_j) -> {level:
    [BranchParam]} for surface sources.  Coincident images are grouped
    into equality classes instead of being intersected; per-pair errors
    are recorded without aborting the remaining pairs.
    """
    if isinstance(branches, dict):
        items = sorted(branches.items())
    else:
        items = list(branches)
    report = TopologyReport()
    by_name = {}
    for name, branch in items:
        entry = BranchReport(name=name)
        try:
            entry.image, entry.k, entry.semigroup = branch_image_data(
                morphism, branch, config)
        except CurvePencilError as exc:
            entry.error = f"{type(exc).__name__}: {exc}"
        report.branches.append(entry)
        by_name[name] = branch
    names = [name for name, _ in items]
    parent = {n: n for n in names}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for i, a in enumerate(names):
        report.pairs[(a, a)] = PairEntry(kind="self")
        for b in names[i + 1:]:
            fib = None
            if fibre_branches is not None:
                fib = fibre_branches.get((a, b)) or fibre_branches.get((b, a))
            try:
                value, witness = pair_intersection(
                    morphism, by_name[a], by_name[b], fib, config)
                entry = PairEntry(kind="value", value=value, witness=witness)
            except ImagesEqual:
                entry = PairEntry(kind="equal")
                parent[find(a)] = find(b)
            except CurvePencilError as exc:
                entry = PairEntry(kind="error",
                                  error=f"{type(exc).__name__}: {exc}")
            report.pairs[(a, b)] = entry
            report.pairs[(b, a)] = entry
    groups: dict[str, list[str]] = {}
    for n in names:
        groups.setdefault(find(n), []).append(n)
    report.classes = sorted(groups.values())
    return report
