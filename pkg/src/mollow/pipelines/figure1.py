"""
figure1
=======

``mollow figure1``: plot data for the corrected Mollow triplet with the
illustrative parameters Γ = 1, Ω = 25, Δ = 10, 𝓒 = 0.02, L_bare = 5.

Panel (a) compares the uncorrected and bare-corrected spectra, panel (b)
the bare-corrected and fully corrected ones.  Frequencies are offsets
from ω_L in units of Γ.  The output is byte-for-byte deterministic.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict

from ..fitting import fit_three_lorentzians
from ..pipeline_base import BasePipeline
from ..scenario import load_preset, resolve
from ..spectrum import CorrectionMode, effective_rabi, write_csv
from .spectrum import generate_spectra

logger = logging.getLogger(__name__)

PRESET = "figure1"

CURVES = [
    ("a", "fig1a_uncorrected.csv", CorrectionMode.NONE),
    ("a", "fig1a_bare.csv", CorrectionMode.BARE),
    ("b", "fig1b_bare.csv", CorrectionMode.BARE),
    ("b", "fig1b_full.csv", CorrectionMode.FULL),
]


def write_figure1(out_dir: Path, fit: bool = False) -> Dict[str, Any]:
    """Write the four curves and ``figure1.json``; returns the manifest."""
    rs = resolve(load_preset(PRESET))
    modes = list(CorrectionMode)
    spectra = generate_spectra(rs, modes)
    out_dir.mkdir(parents=True, exist_ok=True)
    panels: Dict[str, list] = {"a": [], "b": []}
    for panel, filename, mode in CURVES:
        write_csv(spectra[mode], out_dir / filename)
        panels[panel].append({"file": filename, "mode": mode.value})
    manifest: Dict[str, Any] = {
        "scenario": rs.scenario.to_dict(),
        "units": rs.units.label,
        "panels": panels,
        "sideband_half_splitting": {
            m.value: effective_rabi(m, rs.Omega, rs.Delta, rs.C_value, rs.L_bare_value) for m in modes
        },
        "grid": spectra[CorrectionMode.NONE].metadata["grid"],
    }
    if fit:
        manifest["fitted_upper_sideband"] = {
            m.value: fit_three_lorentzians(spectra[m]).upper.center - rs.omega_L for m in modes
        }
    with open(out_dir / "figure1.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Wrote %d curves and figure1.json to %s", len(CURVES), out_dir)
    return manifest


class Pipeline(BasePipeline):
    name = "figure1"
    description = "Plot data for the corrected Mollow triplet (CSV plus JSON manifest)"
    version = "1.0.0"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--out", metavar="DIR", default="figure1", help="output directory (default: figure1)")
        parser.add_argument("--fit", action="store_true", help="also fit each curve and record the sideband centres")

    def run(self, args: argparse.Namespace) -> int:
        manifest = write_figure1(Path(args.out), fit=args.fit)
        for panel in ("a", "b"):
            for entry in manifest["panels"][panel]:
                self.emit(str(Path(args.out) / entry["file"]))
        self.emit(str(Path(args.out) / "figure1.json"))
        return 0
