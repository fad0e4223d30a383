"""Exception hierarchy shared by every layer of the library.

Every error raised on purpose by curvepencil derives from CurvePencilError,
so callers (and the CLI driver) can map failures to a small set of outcomes.
"""

from __future__ import annotations


class CurvePencilError(Exception):
    """Base class for all library errors."""


class ZeroDivisor(CurvePencilError):
    """A nonzero element of an extension level had no inverse.

    This means a minimal polynomial that was asserted irreducible is in fact
    reducible; ``factor`` holds a proper factor (coefficient list, low degree
    first) discovered by the failed inversion.
    """

    def __init__(self, message: str, factor=None):
        super().__init__(message)
        self.factor = factor


class PrecisionExhausted(CurvePencilError):
    """A certified answer could not be reached below the precision cap."""

    def __init__(self, message: str, cap: int | None = None):
        super().__init__(message)
        self.cap = cap


class NeedsPrecision(CurvePencilError):
    """Internal signal: retry the computation at a higher truncation order.

    Drivers catch this and climb the precision ladder; it never escapes a
    public entry point (the ladder top converts it to PrecisionExhausted).
    """

    def __init__(self, message: str = "insufficient precision",
                 have: int | None = None):
        super().__init__(message)
        self.have = have


class FactorDegreeExceeded(CurvePencilError):
    """Irreducibility analysis was requested beyond the configured degree bound."""


class CommonFactor(CurvePencilError):
    """Two polynomials that must be coprime share a component."""


class EqualBranches(CurvePencilError):
    """An operation that requires two distinct branches received equal ones."""


class ImagesEqual(CurvePencilError):
    """The direct images of the two source branches coincide."""


class NonFiniteAlongBranch(CurvePencilError):
    """Both components of the morphism vanish identically on the branch."""


class DegenerateMorphism(CurvePencilError):
    """The Jacobian determinant of the plane morphism vanishes identically."""


class FibreBranchesRequired(CurvePencilError):
    """A normal-surface computation needs user-supplied fibre branches.

    ``level`` records the pencil step whose fibre decomposition is missing.
    """

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class InconsistentDegree(CurvePencilError):
    """A pencil order was not divisible by the covering degree k."""


class MaxIterationsExceeded(CurvePencilError):
    """The pencil iteration hit the configured step cap."""


class InputError(CurvePencilError):
    """Invalid input document or expression (CLI layer)."""


class ExprSyntaxError(InputError):
    """Expression failed to parse; carries line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariable(ExprSyntaxError):
    """Expression used a name that was not declared."""


class NonPolynomialExponent(ExprSyntaxError):
    """Exponent was not a nonnegative integer literal."""
