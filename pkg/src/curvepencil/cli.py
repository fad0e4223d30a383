"""Command-line interface: pencil, intersect, topology, discriminant, oracle.

Input is a single JSON document (see ``parsing``); output is a JSON
report (default) or an indented text rendering of the same data.  Every
number in a JSON report is exact: integers as numbers, rationals as
"p/q" strings, infinite values as "inf".

Exit codes: 0 success; 2 input or parse error; 3 domain error (branch
not finite, degenerate morphism, coincident images, missing fibre
branches, equal branches, inconsistent covering degree); 4 precision or
iteration budget exhausted; 5 coefficient-field failure (a declared
minimal polynomial was reducible).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from .config import Config
from .curves import PlaneParam
from .discriminant import critical_branches, discriminant_topology
from .errors import (CurvePencilError, DegenerateMorphism, EqualBranches,
                     FibreBranchesRequired, ImagesEqual, InconsistentDegree,
                     InputError, MaxIterationsExceeded, NeedsPrecision,
                     NonFiniteAlongBranch, PrecisionExhausted, ZeroDivisor)
from .invariants import semigroup_from_pencil
from .multibranch import (branch_image_data, covering_degree,
                          pair_intersection, topology_report)
from .oracle import intersection_brute, semigroup_from_param
from .parsing import InputDocument, load_document, parse_fibre_branches
from .pencil import PencilSequence
from .series import INFINITY, PowerSeries

_EXIT_INPUT = 2
_EXIT_DOMAIN = 3
_EXIT_PRECISION = 4
_EXIT_FIELD = 5

_DOMAIN_ERRORS = (NonFiniteAlongBranch, DegenerateMorphism, ImagesEqual,
                  FibreBranchesRequired, EqualBranches, InconsistentDegree)
_PRECISION_ERRORS = (PrecisionExhausted, MaxIterationsExceeded)


# -- serialization ----------------------------------------------------------

def _num(value):
    """Exact JSON value for an int, Fraction, or infinity."""
    if value is None:
        return None
    if value == INFINITY:
        return "inf"
    frac = Fraction(value)
    if frac.denominator == 1:
        return int(frac)
    return f"{frac.numerator}/{frac.denominator}"


def _scalar(s) -> str:
    return str(s)


def _series(ps: PowerSeries) -> dict:
    return {
        "terms": {str(e): _scalar(c) for e, c in sorted(ps.terms.items())},
        "prec": ps.prec,
    }


def _plane_param(pp: PlaneParam | None):
    if pp is None:
        return None
    if pp.axis == "x":
        return {"axis": "x"}
    return {"c": _scalar(pp.c), "p": pp.p, "y": _series(pp.yser)}


def _branch_like(obj):
    """Serialise whatever stands for a fibre/critical branch."""
    if obj is None:
        return None
    if hasattr(obj, "components"):                       # BranchParam
        return {"components": [_series(c) for c in obj.components]}
    if hasattr(obj, "exponent"):                          # PlaneBranch
        if obj.axis == "x":
            return {"axis": "x", "mult": obj.mult}
        return {"p": obj.exponent, "y": _series(obj.yser), "mult": obj.mult}
    return {"repr": repr(obj)}


def _semigroup(sem):
    if sem is None:
        return None
    return {
        "k": sem.k,
        "axis_image": sem.axis,
        "orders": [_num(v) for v in sem.orders],
        "m": [_num(v) for v in sem.m],
        "mtilde": [_num(v) for v in sem.mtilde],
        "e": [_num(v) for v in sem.e],
        "d": [_num(v) for v in sem.d],
        "generators": sem.generators,
        "char_exponents": sem.char_exponents,
        "multiplicity": sem.multiplicity,
    }


def _witness(w):
    if w is None:
        return None
    return {
        "level": w.level,
        "witness": _branch_like(w.witness),
        "witness_image": _plane_param(w.witness_image),
        "ratio_first": _num(w.ratio_first),
        "ratio_second": _num(w.ratio_second),
        "candidate_first": _num(w.candidate_first),
        "candidate_second": _num(w.candidate_second),
        "attained": w.attained,
        "note": w.note,
    }


def _pencil(seq: PencilSequence) -> dict:
    return {
        "swapped": seq.swapped,
        "orders": [_num(v) for v in seq.all_orders()],
        "quotients": [_num(q) for q in seq.quotients()],
        "steps": [
            {"nu": s.nu, "mu": s.mu, "p": s.p, "q": s.q, "a": _scalar(s.a)}
            for s in seq.steps
        ],
        "termination": seq.termination,
        "complete_level": seq.complete_level,
    }


def _topology(report) -> dict:
    return {
        "branches": [
            {
                "name": b.name,
                "k": b.k,
                "image": _plane_param(b.image),
                "semigroup": _semigroup(b.semigroup),
                "error": b.error,
            }
            for b in report.branches
        ],
        "pairs": [
            {
                "pair": [a, b],
                "kind": entry.kind,
                "value": entry.value,
                "witness": _witness(entry.witness),
                "error": entry.error,
            }
            for (a, b), entry in sorted(report.pairs.items())
            if a <= b
        ],
        "classes": report.classes,
    }


def _leaf(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def _render_text(value, indent: int = 0, key=None) -> list[str]:
    pad = "  " * indent
    label = f"{key}: " if key is not None else ""
    if isinstance(value, dict):
        lines = [f"{pad}{key}:"] if key is not None else []
        for k, v in value.items():
            lines.extend(_render_text(v, indent + (key is not None), k))
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{pad}{label}{', '.join(_leaf(v) for v in value)}"]
        lines = [f"{pad}{key}:"] if key is not None else []
        for v in value:
            lines.append(f"{pad}  -")
            lines.extend(_render_text(v, indent + 2))
        return lines
    return [f"{pad}{label}{_leaf(value)}"]


# -- command runners --------------------------------------------------------

def _selected_branches(doc: InputDocument, names) -> list[str]:
    if names:
        missing = [n for n in names if n not in doc.branches]
        if missing:
            raise InputError(f"unknown branch name(s): {', '.join(missing)}")
        return list(names)
    return sorted(doc.branches)


def _run_pencil(doc: InputDocument, args) -> dict:
    out = {"command": "pencil", "branches": []}
    for name in _selected_branches(doc, args.branch):
        branch = doc.branches[name]
        entry = None
        for prec in doc.config.precisions():
            try:
                image, k = covering_degree(doc.morphism, branch, prec,
                                           doc.config)
                record = {"name": name, "k": k, "image": _plane_param(image)}
                if image.axis == "x":
                    record["pencil"] = None
                    record["semigroup"] = None
                else:
                    seq = PencilSequence(doc.morphism, branch, k=k,
                                         prec=prec, config=doc.config)
                    record["semigroup"] = _semigroup(
                        semigroup_from_pencil(seq))
                    record["pencil"] = _pencil(seq)
                entry = record
                break
            except NeedsPrecision:
                continue
        if entry is None:
            raise PrecisionExhausted(
                f"pencil data for {name!r} undecided at cap "
                f"{doc.config.precision_cap}", cap=doc.config.precision_cap)
        out["branches"].append(entry)
    return out


def _pair_names(doc: InputDocument, args) -> tuple[str, str]:
    if args.pair:
        a, b = args.pair
    elif len(doc.branches) == 2:
        a, b = sorted(doc.branches)
    else:
        raise InputError(
            "intersect/oracle need --pair NAME NAME unless the document "
            "declares exactly two branches"
        )
    for n in (a, b):
        if n not in doc.branches:
            raise InputError(f"unknown branch name {n!r}")
    return a, b


def _run_intersect(doc: InputDocument, args) -> dict:
    a, b = _pair_names(doc, args)
    fibre = (doc.fibre_branches.get((a, b))
             or doc.fibre_branches.get((b, a)))
    value, witness = pair_intersection(doc.morphism, doc.branches[a],
                                       doc.branches[b], fibre, doc.config)
    return {"command": "intersect", "pair": [a, b], "value": value,
            "witness": _witness(witness)}


def _run_topology(doc: InputDocument, args) -> dict:
    report = topology_report(doc.morphism, sorted(doc.branches.items()),
                             doc.fibre_branches or None, doc.config)
    return {"command": "topology", **_topology(report)}


def _run_discriminant(doc: InputDocument, args) -> dict:
    out = {"command": "discriminant"}
    if doc.critical is None and doc.morphism.nvars == 2:
        crit = None
        for prec in doc.config.precisions():
            try:
                crit = critical_branches(doc.morphism, prec, doc.config)
                break
            except NeedsPrecision:
                continue
        if crit is None:
            raise PrecisionExhausted(
                "critical branches undecided at the precision cap",
                cap=doc.config.precision_cap)
        out["critical"] = [
            {"branch": _branch_like(br), "excluded": excl, "reason": reason}
            for br, excl, reason in crit.branches
        ]
    report = discriminant_topology(doc.morphism, doc.critical,
                                   doc.fibre_branches or None, doc.config)
    out.update(_topology(report))
    return out


def _run_oracle(doc: InputDocument, args) -> dict:
    out = {"command": "oracle", "branches": [], "pairs": []}
    names = _selected_branches(doc, args.branch)
    images = {}
    for name in names:
        image, k, _ = branch_image_data(doc.morphism, doc.branches[name],
                                        doc.config)
        images[name] = image
        sem = semigroup_from_param(image)
        out["branches"].append({
            "name": name, "k": k, "image": _plane_param(image),
            "generators": sem.generators,
            "char_exponents": sem.char_exponents,
        })
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            try:
                res = intersection_brute(images[a], images[b], doc.config)
                out["pairs"].append({
                    "pair": [a, b], "value": res.value,
                    "method": res.method, "precision": res.precision,
                })
            except EqualBranches:
                out["pairs"].append({"pair": [a, b], "value": None,
                                     "method": "equal-branches",
                                     "precision": None})
    return out


_RUNNERS = {
    "pencil": _run_pencil,
    "intersect": _run_intersect,
    "topology": _run_topology,
    "discriminant": _run_discriminant,
    "oracle": _run_oracle,
}


def run(command: str, doc: InputDocument, args) -> dict:
    """Execute one subcommand against a loaded document."""
    return _RUNNERS[command](doc, args)


# -- entry point ------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvepencil",
        description="Topology of images of curve branches under finite "
                    "morphisms, by iterated pencils.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("pencil", "pencil orders, quotients, and semigroup per branch"),
        ("intersect", "intersection multiplicity of two image branches"),
        ("topology", "full topology report of all declared branches"),
        ("discriminant", "critical locus and discriminant topology"),
        ("oracle", "brute-force cross-checks (slow, exact)"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="JSON input document")
        p.add_argument("--stdin", action="store_true",
                       help="read the JSON document from standard input")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--precision-cap", type=int, default=None)
        p.add_argument("--max-iter", type=int, default=None)
        p.add_argument("--fibre-branches", default=None,
                       help="JSON file with extra fibre branch supplements")
        if name in ("pencil", "oracle"):
            p.add_argument("--branch", action="append", default=None,
                           help="restrict to this branch (repeatable)")
        else:
            p.set_defaults(branch=None)
        if name in ("intersect", "oracle"):
            p.add_argument("--pair", nargs=2, metavar="NAME", default=None)
        else:
            p.set_defaults(pair=None)
    return parser


def _load(args) -> InputDocument:
    if args.stdin:
        text = sys.stdin.read()
    elif args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input!r}: {exc}")
    else:
        raise InputError("provide an input file or --stdin")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}")
    doc = load_document(data)
    overrides = {}
    if args.precision_cap is not None:
        overrides["precision_cap"] = args.precision_cap
    if args.max_iter is not None:
        overrides["max_iterations"] = args.max_iter
    if overrides:
        doc.config = replace(doc.config, **overrides)
    if args.fibre_branches:
        try:
            with open(args.fibre_branches, "r", encoding="utf-8") as handle:
                extra = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read fibre branches: {exc}")
        doc.fibre_branches.update(parse_fibre_branches(
            extra, doc.tower, doc.constants, len(doc.variables)))
    return doc


def _emit(payload: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    else:
        stream.write("\n".join(_render_text(payload)) + "\n")


def _error_payload(exc: Exception) -> dict:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    level = getattr(exc, "level", None)
    if level is not None:
        payload["error"]["level"] = level
    cap = getattr(exc, "cap", None)
    if cap is not None:
        payload["error"]["cap"] = cap
    return payload


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = args.format
    try:
        doc = _load(args)
        payload = run(args.command, doc, args)
    except InputError as exc:
        _emit(_error_payload(exc), fmt, sys.stderr)
        return _EXIT_INPUT
    except _DOMAIN_ERRORS as exc:
        _emit(_error_payload(exc), fmt, sys.stderr)
        return _EXIT_DOMAIN
    except _PRECISION_ERRORS as exc:
        _emit(_error_payload(exc), fmt, sys.stderr)
        return _EXIT_PRECISION
    except ZeroDivisor as exc:
        _emit(_error_payload(exc), fmt, sys.stderr)
        return _EXIT_FIELD
    except CurvePencilError as exc:
        _emit(_error_payload(exc), fmt, sys.stderr)
        return _EXIT_DOMAIN
    _emit(payload, fmt, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
