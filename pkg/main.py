"""Convenience entry point for running the ``mollow`` command line.

This script ensures the project's ``src`` directory is on ``sys.path`` so
that the ``mollow`` package can be imported without installation.  It then
invokes :func:`mollow.cli.main`, the same entry point as the ``mollow``
console script.
"""

from __future__ import annotations

import sys
from pathlib import Path

root = Path(__file__).resolve().parent
src = root / "src"
if str(src) not in sys.path:
    sys.path.insert(0, str(src))

from mollow.cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
