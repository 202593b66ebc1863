"""
shifts
======

``mollow shifts``: every radiative quantity of one scenario, in the
scenario's units.  Prints a table rounded to six digits, or full precision
with ``--format csv`` (``name,value`` rows) or ``--format json``.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

from ..dressed import generalized_rabi, mixing_angle
from ..pipeline_base import (
    BasePipeline,
    add_mode_argument,
    add_scenario_arguments,
    constants_from_args,
    modes_from_args,
    scenario_from_args,
)
from ..radiative import radiative_corrections
from ..scenario import ResolvedScenario, resolve
from ..spectrum import CorrectionMode

logger = logging.getLogger(__name__)

_LABELS: List[Tuple[str, str]] = [
    ("ell", "ell"),
    ("L_bare", "L_bare"),
    ("C", "C"),
    ("theta", "theta"),
    ("Omega_R", "Omega_R"),
    ("dL_app_plus", "dL_app+"),
    ("dL_app_minus", "dL_app-"),
    ("dC_plus", "dC+"),
    ("dC_minus", "dC-"),
    ("dw_plus", "dw+ (bare)"),
    ("dw_minus", "dw- (bare)"),
    ("small_dw_plus", "dw+ (Rabi)"),
    ("small_dw_minus", "dw- (Rabi)"),
    ("full_plus", "dL_full+"),
    ("full_minus", "dL_full-"),
]


def compute_shifts(rs: ResolvedScenario) -> Dict[str, Any]:
    """Shift record of a resolved scenario.

    Corrections the scenario's mode switches off are reported as zero:
    ``none`` zeroes everything, ``bare`` keeps only the L_bare terms.
    """
    mode = rs.mode
    corr = radiative_corrections(rs.Omega, rs.Delta, rs.C, rs.L_bare, tr=rs.transition, to_units=rs.units.from_natural)
    lamb_on = mode is not CorrectionMode.NONE
    rabi_on = mode is CorrectionMode.FULL
    record: Dict[str, Any] = {
        "ell": rs.ell,
        "L_bare": rs.L_bare,
        "C": rs.C,
        "theta": mixing_angle(rs.Omega, rs.Delta),
        "Omega_R": generalized_rabi(rs.Omega, rs.Delta),
        "dL_app_plus": corr.dL_app_plus if lamb_on else 0.0,
        "dL_app_minus": corr.dL_app_minus if lamb_on else 0.0,
        "dC_plus": corr.dC_plus if rabi_on else 0.0,
        "dC_minus": corr.dC_minus if rabi_on else 0.0,
        "dw_plus": corr.dw_plus,
        "dw_minus": corr.dw_minus,
        "small_dw_plus": corr.small_dw_plus,
        "small_dw_minus": corr.small_dw_minus,
        "full_plus": corr.full_plus,
        "full_minus": corr.full_minus,
    }
    record["units"] = rs.units.label
    record["mode"] = mode.value
    record["overrides"] = list(rs.overrides)
    record["scenario"] = rs.scenario.to_dict()
    return record


class Pipeline(BasePipeline):
    name = "shifts"
    description = "Radiative shifts of the dressed levels and Mollow sidebands"
    version = "1.0.0"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_scenario_arguments(parser)
        add_mode_argument(parser)
        parser.add_argument("--format", choices=["table", "csv", "json"], default="table")
        parser.add_argument("--out", metavar="PATH", default=None, help="also write the JSON record here")

    def run(self, args: argparse.Namespace) -> int:
        scenario = scenario_from_args(args)
        if args.mode:
            scenario = scenario.with_mode(modes_from_args(args, [])[-1])
        record = compute_shifts(resolve(scenario, constants_from_args(args)))
        if args.format == "json":
            self.emit_json(record)
        elif args.format == "csv":
            self.emit_csv((key, record[key]) for key, _ in _LABELS)
        else:
            self.emit(f"# units: {record['units']}  mode: {record['mode']}")
            if record["overrides"]:
                self.emit(f"# overrides: {', '.join(record['overrides'])}")
            self.emit_table((label, record[key]) for key, label in _LABELS)
        if args.out:
            path = Path(args.out)
            with open(path, "w", encoding="utf-8") as f:
                json.dump(record, f, indent=2, sort_keys=True)
                f.write("\n")
            logger.info("Wrote %s", path)
        return 0
