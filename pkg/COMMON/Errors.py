"""Exception hierarchy shared by every SuperCtrl layer."""
from __future__ import annotations

from typing import Optional


class SuperCtrlError(Exception):
    """Root of all errors raised by the library."""


class GeneratorCountError(SuperCtrlError, ValueError):
    pass


class ParityError(SuperCtrlError, ValueError):
    pass


class ShapeError(SuperCtrlError, ValueError):
    pass


class ModeError(SuperCtrlError, ValueError):
    pass


class AlgebraMismatchError(SuperCtrlError, ValueError):
    pass


class BerezinianUndefinedError(SuperCtrlError, ArithmeticError):
    pass


class NumericError(SuperCtrlError, ArithmeticError):
    pass


class NotInvertibleError(SuperCtrlError, ZeroDivisionError):
    pass


class RankError(SuperCtrlError, ValueError):
    pass


class NotClosedError(SuperCtrlError, ValueError):
    """A bracket left the span it was expected to stay in."""

    def __init__(self, left: str, right: str, message: Optional[str] = None) -> None:
        self.pair = (left, right)
        super().__init__(message or f"bracket [{left}, {right}] is outside the span")


class PreconditionError(SuperCtrlError, ValueError):
    pass


class NotInvariantError(SuperCtrlError, ValueError):
    """ad(X) maps a basis element outside the algebra."""

    def __init__(self, element: str) -> None:
        self.element = element
        super().__init__(f"ad(X)({element}) leaves the algebra")


class ArityError(SuperCtrlError, ValueError):
    pass


class ScheduleError(SuperCtrlError, ValueError):
    pass


class InvalidAlgebraError(SuperCtrlError, ValueError):
    pass


class UnknownAlgebraError(SuperCtrlError, KeyError):
    def __str__(self) -> str:
        # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown algebra"


class SpecFileError(SuperCtrlError, ValueError):
    """Spec or schedule file problem, located by a dotted field path."""

    def __init__(self, field: str, message: str, line: Optional[int] = None) -> None:
        self.field = field
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{field}: {message}")
