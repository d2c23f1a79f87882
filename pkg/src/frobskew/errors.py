"""Exception hierarchy.

Every library error carries a stable ``code`` string; the CLI maps it to the
``{"error": code, "detail": ...}`` object verbatim.
"""

from __future__ import annotations


class FrobSkewError(Exception):
    code = "Error"

    def __init__(self, detail: str = "", **info):
        self.detail = detail or self.code
        self.info = info
        super().__init__(self.detail)


class RingMismatch(FrobSkewError):
    code = "RingMismatch"


class FieldMismatch(RingMismatch):
    code = "FieldMismatch"


class NotPerfect(FrobSkewError):
    code = "NotPerfect"


class NotAField(FrobSkewError):
    code = "NotAField"


class DivisionByZero(FrobSkewError, ZeroDivisionError):
    code = "DivisionByZero"


class NotInvertible(FrobSkewError, ArithmeticError):
    code = "NotInvertible"


class NotIrreducible(FrobSkewError, ValueError):
    code = "NotIrreducible"


class InvalidParams(FrobSkewError, ValueError):
    code = "InvalidParams"


class EmptyInput(FrobSkewError, ValueError):
    code = "EmptyInput"


class ZeroDenominator(FrobSkewError, ValueError):
    code = "ZeroDenominator"


class DenominatorNotInS(FrobSkewError, ValueError):
    code = "DenominatorNotInS"


class NotFree(FrobSkewError, ValueError):
    code = "NotFree"


class NotFiniteDimensional(FrobSkewError, ValueError):
    code = "NotFiniteDimensional"


class BoundTooSmall(FrobSkewError, ValueError):
    code = "BoundTooSmall"


class PointNotRational(FrobSkewError, ValueError):
    code = "PointNotRational"


class MultiplePoints(FrobSkewError, ValueError):
    code = "MultiplePoints"


class ExprSyntaxError(FrobSkewError, SyntaxError):
    code = "SyntaxError"

    def __init__(self, detail: str = "", position: int | None = None):
        super().__init__(detail, position=position)
        self.position = position


class UnknownSymbol(FrobSkewError, ValueError):
    code = "UnknownSymbol"
