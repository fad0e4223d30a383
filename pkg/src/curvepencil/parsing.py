"""Expression parsing and input-document loading for the CLI.

Expressions are polynomials over declared variable names with integer or
rational coefficients, the operators + - * / ^ and parentheses; division
is only allowed by a nonzero constant, exponents must be nonnegative
integer literals.  Coefficients may use declared extension generators
(names with minimal polynomials given in the document header), so exact
algebraic numbers can be entered without special syntax.

An input document is a single JSON object:

    {
      "variables": ["x", "y"],
      "extensions": [{"name": "r", "minpoly": "r^2 - 2"}],
      "morphism": {"f": "...", "g": "..."},
      "branches": {"gamma": ["t^2", "t^3 + (1/2)*t^6"], ...},
      "fibre_branches": {"gamma|delta": {"0": [["t", "0", "0"]]}},
      "options": {"precision_cap": 4096, "max_iterations": 64}
    }

Parametrisation components are expressions in the reserved variable t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT, Config
from .curves import BranchParam, Morphism
from .errors import (ExprSyntaxError, InputError, NonPolynomialExponent,
                     UnknownVariable)
from .fields import Scalar, Tower
from .multipoly import MultiPoly
from .series import PowerSeries


@dataclass
class Token:
    kind: str          # "num" | "name" | "op" | "end"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(Token("op", ch, line, col))
            col += 1
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    """Recursive descent over + - * / ^ ( ) with declared names only."""

    def __init__(self, text: str, variables: list[str], tower: Tower,
                 constants: dict[str, Scalar] | None = None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = list(variables)
        self.tower = tower
        self.constants = dict(constants or {})
        self.nvars = len(self.variables)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r}",
                                  tok.line, tok.column)
        return result

    def expr(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            result = self.term()
            if tok.text == "-":
                result = -result
        else:
            result = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if tok.text == "+" else result - rhs
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.power()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.take()
                rhs = self.power()
                if tok.text == "*":
                    result = result * rhs
                else:
                    c = self._as_constant(rhs, tok)
                    result = result.scale(c.inverse())
            else:
                return result

    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            etok = self.take()
            if etok.kind != "num":
                raise NonPolynomialExponent(
                    "exponent must be a nonnegative integer literal",
                    etok.line, etok.column,
                )
            return base ** int(etok.text)
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok.kind == "num":
            return MultiPoly.constant(self.tower, self.nvars, int(tok.text))
        if tok.kind == "name":
            if tok.text in self.variables:
                return MultiPoly.variable(self.tower, self.nvars,
                                          self.variables.index(tok.text))
            if tok.text in self.constants:
                return MultiPoly.constant(self.tower, self.nvars,
                                          self.constants[tok.text])
            raise UnknownVariable(f"unknown name {tok.text!r}",
                                  tok.line, tok.column)
        if tok.kind == "op" and tok.text == "-":
            return -self.atom()
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                raise ExprSyntaxError("expected ')'", close.line, close.column)
            return inner
        if tok.kind == "end":
            raise ExprSyntaxError("unexpected end of input",
                                  tok.line, tok.column)
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.column)

    def _as_constant(self, mp: MultiPoly, tok: Token) -> Scalar:
        if mp.is_zero():
            raise ExprSyntaxError("division by zero", tok.line, tok.column)
        if mp.total_degree() != 0:
            raise ExprSyntaxError("can only divide by a constant",
                                  tok.line, tok.column)
        return next(iter(mp.terms.values()))


def parse_expression(text: str, variables, tower: Tower,
                     constants=None) -> MultiPoly:
    """Parse a polynomial expression over the declared variables."""
    return _Parser(text, list(variables), tower, constants).parse()


def parse_parametrization(text: str, tower: Tower,
                          constants=None) -> PowerSeries:
    """Parse one parametrisation component, a polynomial in t."""
    mp = _Parser(text, ["t"], tower, constants).parse()
    return PowerSeries(tower, {e[0]: c for e, c in mp.terms.items()}, None)


@dataclass
class InputDocument:
    """A fully parsed run description."""

    tower: Tower
    variables: list[str]
    constants: dict[str, Scalar]
    morphism: Morphism
    branches: dict[str, BranchParam]
    fibre_branches: dict = field(default_factory=dict)
    critical: list[BranchParam] | None = None
    config: Config = DEFAULT


def _build_tower(extensions) -> tuple[Tower, dict[str, Scalar]]:
    tower = Tower()
    constants: dict[str, Scalar] = {}
    for ext in extensions:
        try:
            name = ext["name"]
            minpoly_text = ext["minpoly"]
        except (TypeError, KeyError):
            raise InputError(
                "each extension needs 'name' and 'minpoly' fields"
            )
        if name in constants:
            raise InputError(f"duplicate extension name {name!r}")
        mp = _Parser(minpoly_text, [name], tower, constants).parse()
        coeffs = [tower.zero] * (mp.total_degree() + 1)
        for e, c in mp.terms.items():
            coeffs[e[0]] = c
        if len(coeffs) < 3:
            raise InputError(
                f"minimal polynomial of {name!r} must have degree >= 2"
            )
        lead = coeffs[-1]
        coeffs = [c * lead.inverse() for c in coeffs]
        constants[name] = tower.adjoin_root(coeffs)
    return tower, constants


def _parse_branch(components, tower: Tower, constants, nvars: int,
                  name: str) -> BranchParam:
    if not isinstance(components, (list, tuple)) or len(components) != nvars:
        raise InputError(
            f"branch {name!r} must list {nvars} component expressions"
        )
    series = [parse_parametrization(c, tower, constants) for c in components]
    if all(s.is_exact_zero() for s in series):
        raise InputError(f"branch {name!r} is identically zero")
    for s in series:
        if 0 in s.terms:
            raise InputError(
                f"branch {name!r} does not pass through the origin"
            )
    return BranchParam(tower, series)


def parse_fibre_branches(data: dict, tower: Tower, constants,
                         nvars: int) -> dict:
    """{(name, name): {level: [BranchParam]}} from the raw JSON mapping."""
    fibre = {}
    for key, levels in (data or {}).items():
        pair = tuple(key.split("|"))
        if len(pair) != 2:
            raise InputError(
                f"fibre_branches key {key!r} must be 'name|name'"
            )
        per_level = {}
        for lvl, plist in levels.items():
            try:
                level = int(lvl)
            except ValueError:
                raise InputError(f"fibre level {lvl!r} is not an integer")
            per_level[level] = [
                _parse_branch(p, tower, constants, nvars, f"{key}@{lvl}")
                for p in plist
            ]
        fibre[pair] = per_level
    return fibre


def load_document(data: dict, config: Config = DEFAULT) -> InputDocument:
    """Build towers, morphism, and branches from a JSON-decoded document."""
    if not isinstance(data, dict):
        raise InputError("input document must be a JSON object")
    variables = data.get("variables")
    if (not isinstance(variables, list) or len(variables) < 2
            or len(set(variables)) != len(variables)):
        raise InputError("'variables' must list >= 2 distinct names")
    if "t" in variables:
        raise InputError("'t' is reserved for parametrizations")
    tower, constants = _build_tower(data.get("extensions", []))
    morphism_entry = data.get("morphism")
    if (not isinstance(morphism_entry, dict)
            or "f" not in morphism_entry or "g" not in morphism_entry):
        raise InputError("'morphism' must be an object with 'f' and 'g'")
    f = parse_expression(morphism_entry["f"], variables, tower, constants)
    g = parse_expression(morphism_entry["g"], variables, tower, constants)
    morphism = Morphism(tower, f, g)
    branches = {}
    for name, comps in (data.get("branches") or {}).items():
        branches[name] = _parse_branch(comps, tower, constants,
                                       len(variables), name)
    fibre = parse_fibre_branches(data.get("fibre_branches"), tower,
                                 constants, len(variables))
    critical = None
    if "critical_branches" in data:
        critical = [
            _parse_branch(p, tower, constants, len(variables),
                          f"critical[{i}]")
            for i, p in enumerate(data["critical_branches"])
        ]
    options = data.get("options") or {}
    cfg = Config(
        precision_start=options.get("precision_start",
                                    config.precision_start),
        precision_cap=options.get("precision_cap", config.precision_cap),
        max_iterations=options.get("max_iterations", config.max_iterations),
        factor_degree_bound=options.get("factor_degree_bound",
                                        config.factor_degree_bound),
    )
    return InputDocument(tower=tower, variables=list(variables),
                         constants=constants, morphism=morphism,
                         branches=branches, fibre_branches=fibre,
                         critical=critical, config=cfg)
