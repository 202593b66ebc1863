"""
fit
===

``mollow fit``: three-Lorentzian fit of a spectrum CSV, or a full sideband
shift measurement for a scenario.

For a scenario the reference and fully corrected spectra are synthesised
(with the scenario's noise, if any), both are fitted, and the measured
sideband displacement is printed next to the closed-form shifts.  A fit
that fails to converge is reported with ``converged: false`` and exit
code 0.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict

from ..errors import ConfigError
from ..fitting import fit_report, fit_three_lorentzians, measure_sideband_shift, residuals_csv
from ..pipeline_base import BasePipeline, add_scenario_arguments, constants_from_args, scenario_from_args
from ..radiative import radiative_corrections
from ..scenario import ResolvedScenario, resolve
from ..spectrum import CorrectionMode, read_csv

logger = logging.getLogger(__name__)


def measure_scenario(rs: ResolvedScenario, reference: CorrectionMode) -> Dict[str, Any]:
    noise = rs.scenario.noise
    measurement = measure_sideband_shift(
        rs.Omega,
        rs.Delta,
        rs.Gamma,
        rs.C_value,
        rs.L_bare_value,
        grid=rs.grid_for([reference, CorrectionMode.FULL]),
        omega_L=rs.omega_L,
        noise=(noise.sigma, noise.seed) if noise is not None else None,
        reference=reference,
        shift_weights_detuning=rs.scenario.corrections.shift_weights_detuning,
    )
    analytic = radiative_corrections(rs.Omega, rs.Delta, rs.C_value, rs.L_bare_value)
    for fit in (measurement.reference_fit, measurement.corrected_fit):
        if not fit.converged:
            logger.warning("Fit did not converge after %d iterations", fit.iterations)
    return {
        "measured": measurement.to_dict(),
        "analytic": {
            "dw_plus": analytic.dw_plus,
            "small_dw_plus": analytic.small_dw_plus,
            "full_plus": analytic.full_plus,
            "expected_plus": measurement.delta_plus_expected,
        },
        "converged": measurement.reference_fit.converged and measurement.corrected_fit.converged,
        "units": rs.units.label,
        "overrides": list(rs.overrides),
        "scenario": rs.scenario.to_dict(),
    }


class Pipeline(BasePipeline):
    name = "fit"
    description = "Fit three Lorentzians to a spectrum CSV or measure a scenario's sideband shift"
    version = "1.0.0"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--csv", metavar="PATH", default=None, help="spectrum CSV to fit")
        add_scenario_arguments(parser, required=False)
        parser.add_argument(
            "--reference",
            choices=[m.value for m in CorrectionMode],
            default=CorrectionMode.NONE.value,
            help="spectrum the corrected one is compared with (default: none)",
        )
        parser.add_argument("--out", metavar="PATH", default=None, help="write the JSON report here")
        parser.add_argument("--residuals", metavar="PATH", default=None, help="CSV of fit residuals (--csv only)")

    def run(self, args: argparse.Namespace) -> int:
        scenario = scenario_from_args(args)
        if (args.csv is None) == (scenario is None):
            raise ConfigError("fit needs exactly one of --csv, --scenario or --preset")
        if args.csv is not None:
            samples = read_csv(args.csv)
            fit = fit_three_lorentzians(samples)
            if not fit.converged:
                logger.warning("Fit did not converge after %d iterations", fit.iterations)
            report = fit_report(fit, samples)
            if args.residuals:
                residuals_csv(samples, fit, args.residuals)
                logger.info("Wrote %s", args.residuals)
        else:
            report = measure_scenario(resolve(scenario, constants_from_args(args)), CorrectionMode(args.reference))
        if args.out:
            with open(Path(args.out), "w", encoding="utf-8") as f:
                json.dump(report, f, indent=2, sort_keys=True)
                f.write("\n")
            logger.info("Wrote %s", args.out)
        else:
            self.emit_json(report)
        return 0
