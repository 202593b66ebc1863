"""
feasibility
===========

``mollow feasibility``: shift-to-width ratio, Bloch–Siegert competition and
laser power for a resonantly driven hydrogenic 1S–2P transition.
"""

from __future__ import annotations

import argparse

from ..errors import ValidationError
from ..feasibility import AVAILABLE_POWER, feasibility_report
from ..pipeline_base import BasePipeline, constants_from_args

_ROWS = [
    ("Z", "Z"),
    ("h", "h"),
    ("C", "C"),
    ("r1_estimate", "r1 ~ hC"),
    ("r1_exact", "r1 (closed form)"),
    ("r2_scaling", "r2 (Z-alpha scaling)"),
    ("r2_pipeline", "r2 (closed forms)"),
    ("bloch_siegert_rad_per_s", "Bloch-Siegert [rad/s]"),
    ("Gamma_rad_per_s", "Gamma [1/s]"),
    ("wavelength_m", "wavelength [m]"),
    ("beam_waist_m", "beam waist [m]"),
    ("required_power_W", "required power [W]"),
    ("available_power_W", "available power [W]"),
    ("power_gap", "power gap"),
]


class Pipeline(BasePipeline):
    name = "feasibility"
    description = "Order-of-magnitude feasibility of observing the radiative sideband shift"
    version = "1.0.0"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--Z", type=int, default=1, help="nuclear charge (default: 1)")
        parser.add_argument("--h", type=float, default=1000.0, help="drive strength Omega/Gamma (default: 1000)")
        parser.add_argument("--waist-over-lambda", type=float, default=1.0, help="beam waist in wavelengths")
        parser.add_argument(
            "--available-power", type=float, default=AVAILABLE_POWER, help="available laser power in W (default: 20e-9)"
        )
        parser.add_argument("--constants", metavar="PATH", default=None, help="physical-constant overrides (YAML)")
        parser.add_argument("--format", choices=["table", "csv", "json"], default="table")

    def run(self, args: argparse.Namespace) -> int:
        if args.Z < 1:
            raise ValidationError(f"nuclear charge must be >= 1, got {args.Z}")
        report = feasibility_report(
            Z=args.Z,
            h=args.h,
            waist_over_lambda=args.waist_over_lambda,
            available_power=args.available_power,
            constants=constants_from_args(args),
        )
        record = report.to_dict()
        if args.format == "json":
            self.emit_json(record)
        elif args.format == "csv":
            self.emit_csv((key, record[key]) for key, _ in _ROWS)
        else:
            self.emit_table((label, record[key]) for key, label in _ROWS)
        return 0
