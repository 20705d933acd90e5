"""Exception hierarchy for supercent.

Every error subclasses the builtin a caller would naturally catch (``ValueError`` for
bad inputs, ``RuntimeError`` for failures during computation), so code written against
plain builtins keeps working.
"""

from typing import Any, Optional


class SupercentError(Exception):
    """Base class for all supercent errors."""


class InputError(SupercentError, ValueError):
    """Invalid shapes, non-finite entries, asymmetry or out-of-range parameters."""


class ConfigError(InputError):
    """Configuration file or environment override failed validation."""


class ParseError(InputError):
    """A CSV or JSON artifact could not be parsed.

    Args:
        message: Human-readable description
        path: File being parsed
        row: 1-based row number, if known
        column: 1-based column number, if known
    """

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        row: Optional[int] = None,
        column: Optional[int] = None,
    ):
        super().__init__(message)
        self.path = path
        self.row = row
        self.column = column


class SingularDesignError(SupercentError, ValueError):
    """Design matrix is numerically singular (reciprocal condition below threshold)."""


class DegenerateInputError(SupercentError, ValueError):
    """Input is degenerate: zero vector, zero network, zero noise estimate."""


class InfiniteLambdaError(DegenerateInputError):
    """Oracle tuning parameter is infinite because the network is noiseless."""


class DegenerateUpdateError(SupercentError, RuntimeError):
    """A solver block update has a zero (or singular) denominator."""


class NonConvergenceError(SupercentError, RuntimeError):
    """An iterative routine exhausted its iteration budget.

    Args:
        message: Human-readable description
        iterations: Iterations performed
        last_iterate: Whatever the routine held when it stopped
    """

    def __init__(self, message: str, iterations: int = 0, last_iterate: Any = None):
        super().__init__(message)
        self.iterations = iterations
        self.last_iterate = last_iterate


class SignAmbiguityError(SupercentError, RuntimeError):
    """Sign of a singular vector cannot be decided against its reference."""


class SelectionError(SupercentError, RuntimeError):
    """Every candidate tuning parameter failed during cross-validation."""
