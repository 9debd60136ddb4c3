"""
Exception hierarchy shared by the algebra layer, the services and the commands.
"""
from typing import Optional


class PoissonKitError(Exception):
    """Base class for all toolkit errors."""


class PolynomialSyntaxError(PoissonKitError, ValueError):
    """Raised when polynomial text does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PoissonKitError, ValueError):
    """Raised when a variable is not part of the context roster."""

    def __init__(self, name: str, position: Optional[int] = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"Unknown variable '{name}'{where}")
        self.name = name
        self.position = position


class ContextMismatchError(PoissonKitError, ValueError):
    """Raised when operands live in different variable contexts."""


class IndexRangeError(PoissonKitError, ValueError):
    """Raised for out-of-range indices or mismatched index sets."""


class InexactDivisionError(PoissonKitError, ArithmeticError):
    """Raised when a Laurent scalar is not divisible by (t - 1)."""


class ResourceLimitError(PoissonKitError):
    """Raised when a computation would exceed a configured cap."""
