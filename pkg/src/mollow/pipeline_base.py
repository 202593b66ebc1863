"""
pipeline_base
=============

Defines the abstract base class for the command-line pipelines.  Each
pipeline module must implement a ``Pipeline`` class that derives from
:class:`BasePipeline` and provides a unique name.  The name doubles as the
subcommand unless :meth:`BasePipeline.get_commands` says otherwise.

A pipeline declares its own options in :meth:`add_arguments` and does its
work in :meth:`run`, which receives the parsed :class:`argparse.Namespace`
and returns a process exit code.  Library errors are left to propagate;
the CLI maps them to exit codes.

Reports go through :meth:`emit` so tests and callers can redirect them
via ``PipelineManager.stdout``.  Logging goes to the ``mollow`` loggers.
"""

from __future__ import annotations

import abc
import argparse
import csv
import io
import json
import logging
import sys
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .constants import PhysicalConstants, load_constants
from .errors import ConfigError
from .scenario import Scenario, load_preset, load_scenario
from .spectrum import CorrectionMode

if TYPE_CHECKING:
    from .pipeline_manager import PipelineManager

logger = logging.getLogger(__name__)

Command = Callable[[argparse.Namespace], int]


class BasePipeline(abc.ABC):
    """Abstract base class for all pipelines."""

    #: Unique name of the pipeline; also the default subcommand.
    name: str = "unnamed"

    #: One-line help shown by ``mollow --help``.
    description: str = ""

    version: str = "0.0.0"

    def __init__(self, manager: "PipelineManager") -> None:
        self.manager = manager
        self.initialized = False

    def initialize(self) -> None:
        """Called once after construction, before any command runs."""
        self.initialized = True

    def finalize(self) -> None:
        """Called when the CLI shuts down."""
        pass

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare subcommand options on ``parser``."""
        pass

    @abc.abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """Execute the pipeline and return an exit code."""

    def get_commands(self) -> Dict[str, Command]:
        return {self.name: self.run}

    # -- helpers shared by the built-in pipelines ---------------------------

    def emit(self, text: str = "") -> None:
        stream = self.manager.stdout if self.manager.stdout is not None else sys.stdout
        print(text, file=stream)

    def emit_json(self, record: Any) -> None:
        self.emit(json.dumps(record, indent=2, sort_keys=True))

    def emit_table(self, rows: Iterable[Tuple[str, Any]]) -> None:
        """Human table: one ``name  value`` line per row, numbers rounded to 6 significant digits."""
        rows = list(rows)
        width = max((len(name) for name, _ in rows), default=0)
        for name, value in rows:
            if isinstance(value, float):
                value = f"{value:.6g}"
            elif value is None:
                value = "-"
            self.emit(f"{name.ljust(width)}  {value}")

    def emit_csv(self, rows: Iterable[Tuple[str, Any]]) -> None:
        """Machine table: ``name,value`` header then one row per entry, floats at 17 significant digits."""
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["name", "value"])
        for name, value in rows:
            if isinstance(value, float):
                value = f"{value:.17g}"
            elif value is None:
                value = ""
            writer.writerow([name, value])
        self.emit(stream.getvalue().rstrip("\n"))


def add_scenario_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """Options every scenario-driven pipeline understands."""
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--scenario", metavar="PATH", help="scenario file (YAML or JSON)")
    source.add_argument("--preset", metavar="NAME", help="preset scenario from presets.yaml")
    parser.add_argument("--seed", type=int, default=None, help="override the noise seed")
    parser.add_argument("--constants", metavar="PATH", default=None, help="physical-constant overrides (YAML)")


def add_mode_argument(parser: argparse.ArgumentParser, default: Optional[Sequence[str]] = None) -> None:
    parser.add_argument(
        "--mode",
        action="append",
        choices=[m.value for m in CorrectionMode],
        default=None,
        help="correction mode; repeat for several (default: %s)" % ", ".join(default or ["scenario's"]),
    )


def scenario_from_args(args: argparse.Namespace) -> Optional[Scenario]:
    if getattr(args, "scenario", None):
        logger.info("Loading scenario %s", args.scenario)
        scenario = load_scenario(args.scenario)
    elif getattr(args, "preset", None):
        logger.info("Using preset scenario %s", args.preset)
        scenario = load_preset(args.preset)
    else:
        return None
    if getattr(args, "seed", None) is not None:
        if args.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {args.seed}", key="noise.seed")
        scenario = scenario.with_seed(args.seed)
    return scenario


def constants_from_args(args: argparse.Namespace) -> PhysicalConstants:
    return load_constants(getattr(args, "constants", None))


def modes_from_args(args: argparse.Namespace, fallback: Sequence[CorrectionMode]) -> List[CorrectionMode]:
    chosen = getattr(args, "mode", None)
    if not chosen:
        return list(fallback)
    out: List[CorrectionMode] = []
    for value in chosen:
        mode = CorrectionMode(value)
        if mode not in out:
            out.append(mode)
    return out
