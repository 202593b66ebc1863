"""
errors
======

Exception hierarchy shared by the library and the command line.  Every
class carries the process exit code the CLI maps it to:

* ``2`` – validation problems (bad scenario, bad grid, undefined drive)
* ``4`` – hard numerical failures (no peaks, degenerate fit seed)

IO failures are plain :class:`OSError` and map to ``3`` in ``cli.py``.
"""

from __future__ import annotations

from typing import Any, Optional


class MollowError(Exception):
    """Base class for all errors raised by :mod:`mollow`."""

    exit_code: int = 1


class ValidationError(MollowError):
    exit_code = 2


class ConfigError(ValidationError):
    """Invalid scenario, preset or constants file.

    ``key`` is the dotted path of the offending entry (``drive.Omega``)
    and ``line`` the 1-based source line when the YAML parser knows it.
    """

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None) -> None:
        self.message = message
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key:
            where.append(f"key '{key}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class BadGrid(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed spectrum CSV; ``row`` is the 1-based line of the file."""

    def __init__(self, message: str, row: Optional[int] = None) -> None:
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class DegenerateDrive(ValidationError, ValueError):
    """Raised when Ω = Δ = 0 and no dressing exists."""


class UnsupportedTransition(ValidationError, ValueError):
    pass


class NumericalError(MollowError):
    exit_code = 4


class NoPeaks(NumericalError):
    pass


class DegenerateInit(NumericalError):
    pass


class DidNotConverge(NumericalError):
    """Fit ran out of iterations.  ``fit`` holds the best parameters seen."""

    def __init__(self, message: str, fit: Any = None) -> None:
        super().__init__(message)
        self.fit = fit
