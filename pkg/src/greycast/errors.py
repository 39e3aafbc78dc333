"""Exception hierarchy shared across the package.

Every error carries the process exit code the CLI maps it to, so the
command layer never has to maintain a separate lookup table.
"""

from __future__ import annotations


class GreycastError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DataError(GreycastError):
    """Invalid input: bad files, bad flags, or data violating a precondition."""

    exit_code = 2


class DegeneracyError(GreycastError):
    """Numerically degenerate problem (singular design, vanishing coefficient)."""

    exit_code = 3


class ConvergenceError(GreycastError):
    """A series or iterative procedure failed to converge."""

    exit_code = 3
