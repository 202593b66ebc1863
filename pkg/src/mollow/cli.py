"""
cli
===

Entry point of the ``mollow`` command.  Subcommands are the registered
pipelines (see :mod:`mollow.pipeline_manager`)::

    mollow shifts --preset figure1
    mollow spectrum --scenario run.yaml --mode bare --mode full --out spectra/
    mollow fit --csv spectra/spectrum_full.csv
    mollow feasibility --Z 1 --h 1000
    mollow figure1 --out fig1/

Exit codes: 0 success (a non-converged fit included), 2 validation error,
3 IO error, 4 hard numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .errors import MollowError
from .pipeline_manager import PipelineManager

logger = logging.getLogger(__name__)

EXIT_IO = 3


def _preparse_pipeline_dirs(argv: List[str]) -> List[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--pipelines", action="append", default=[])
    known, _ = pre.parse_known_args(argv)
    return known.pipelines


def build_parser(manager: PipelineManager) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mollow", description="Radiative corrections to dressed states and the Mollow spectrum"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--pipelines", metavar="DIR", action="append", default=[], help="directory of external pipelines (repeatable)"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    manager.add_subparsers(parser)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger("mollow").setLevel(level)


def main(argv: Optional[List[str]] = None, manager: Optional[PipelineManager] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    manager = manager or PipelineManager()
    if not manager.pipelines:
        manager.load_builtin_pipelines()
    for path in _preparse_pipeline_dirs(argv):
        manager.load_external_pipelines(path)
    parser = build_parser(manager)
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return manager.dispatch(args.command, args)
    except MollowError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except OSError as exc:
        logger.error("IO error: %s", exc)
        return EXIT_IO
    finally:
        manager.finalize_pipelines()


if __name__ == "__main__":
    sys.exit(main())
