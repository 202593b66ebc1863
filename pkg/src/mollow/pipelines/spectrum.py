"""
spectrum
========

``mollow spectrum``: sample the incoherent spectrum of a scenario for one
or more correction modes.

CSV output writes ``spectrum_<mode>.csv`` per mode into ``--out`` with a
JSON sidecar holding the sample metadata and the scenario that reproduces
it.  JSON output writes a single ``spectrum.json`` with every mode.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..pipeline_base import (
    BasePipeline,
    add_mode_argument,
    add_scenario_arguments,
    constants_from_args,
    modes_from_args,
    scenario_from_args,
)
from ..scenario import ResolvedScenario, resolve
from ..spectrum import CorrectionMode, GridSpec, SpectrumSamples, spectrum_pair, write_csv, write_sidecar

logger = logging.getLogger(__name__)


def generate_spectra(
    rs: ResolvedScenario, modes: List[CorrectionMode], chunk_size: Optional[int] = None
) -> Dict[CorrectionMode, SpectrumSamples]:
    grid = rs.grid_for(modes)
    return spectrum_pair(
        rs.Omega,
        rs.Delta,
        rs.Gamma,
        rs.C_value,
        rs.L_bare_value,
        grid=grid,
        omega_L=rs.omega_L,
        shift_weights_detuning=rs.scenario.corrections.shift_weights_detuning,
        modes=modes,
        chunk_size=chunk_size,
    )


def provenance(rs: ResolvedScenario, mode: CorrectionMode, samples: SpectrumSamples) -> Dict[str, Any]:
    """Scenario that regenerates ``samples`` exactly, plus unit and override flags."""
    grid = samples.metadata.get("grid")
    scenario = rs.scenario.with_mode(mode)
    if scenario.grid is None and grid is not None:
        scenario = dataclasses.replace(scenario, grid=GridSpec(**grid))
    return {"scenario": scenario.to_dict(), "units": rs.units.label, "overrides": list(rs.overrides)}


class Pipeline(BasePipeline):
    name = "spectrum"
    description = "Sample the incoherent Mollow spectrum to CSV or JSON"
    version = "1.0.0"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_scenario_arguments(parser)
        add_mode_argument(parser)
        parser.add_argument("--out", metavar="DIR", default=".", help="output directory (default: .)")
        parser.add_argument("--format", choices=["csv", "json"], default="csv")
        parser.add_argument("--chunk-size", type=int, default=None, help="evaluate the grid in slices of this size")

    def run(self, args: argparse.Namespace) -> int:
        scenario = scenario_from_args(args)
        modes = modes_from_args(args, [scenario.corrections.mode])
        rs = resolve(scenario, constants_from_args(args))
        spectra = generate_spectra(rs, modes, args.chunk_size)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.format == "csv":
            for mode, samples in spectra.items():
                csv_path = write_csv(samples, out_dir / f"spectrum_{mode.value}.csv")
                write_sidecar(samples, csv_path.with_suffix(".json"), provenance(rs, mode, samples))
                logger.info("Wrote %s (%d samples)", csv_path, len(samples))
                self.emit(str(csv_path))
        else:
            record = {
                mode.value: {
                    "metadata": dict(samples.metadata, **provenance(rs, mode, samples)),
                    "omega": samples.omega_grid.tolist(),
                    "S_inc": samples.values.tolist(),
                }
                for mode, samples in spectra.items()
            }
            path = out_dir / "spectrum.json"
            with open(path, "w", encoding="utf-8") as f:
                json.dump(record, f, indent=2, sort_keys=True)
                f.write("\n")
            logger.info("Wrote %s", path)
            self.emit(str(path))
        return 0
