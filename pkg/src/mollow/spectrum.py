"""
spectrum
========

Secular-limit incoherent Mollow spectrum

    S_inc(ω) = Γ/π · [ Γ₀A₀ / ((ω−ω_L)² + Γ₀²)
                     + Γ₊A₊ / ((ω−ω_L−Ω_R)² + Γ₊²)
                     + Γ₋A₋ / ((ω−ω_L+Ω_R)² + Γ₋²) ]

with and without the radiative corrections.  A correction enters only
through the generalized Rabi frequency Ω_R that is used for every
occurrence of Ω_R in the peak positions, weights and widths; the raw Ω
and Δ stay as they are unless ``shift_weights_detuning`` asks for the
alternative reading in which Δ → Δ − L_bare inside the weights and widths
as well.

Spectra are evaluated point by point, so any partition of a grid gives
bitwise identical samples.  The elastic (coherent) line at ω_L is not part
of S_inc.

File formats
------------
CSV: header ``omega,S_inc`` followed by one ``%.17g`` row per sample.
JSON sidecar (same stem, ``.json``): the :attr:`SpectrumSamples.metadata`
record, which includes the full :class:`MollowParameters`.
"""

from __future__ import annotations

import csv
import enum
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

import numpy as np

from .errors import BadGrid, DegenerateDrive, ParseError, ValidationError
from .radiative import corrected_half_splitting
from .dressed import generalized_rabi

logger = logging.getLogger(__name__)

#: Ω_R/Γ below which the three-Lorentzian form is a poor approximation.
SECULAR_RATIO = 10.0

#: Default grid: ω_L ± (1.5 Ω_R + 10 Γ) with this many points.
DEFAULT_GRID_COUNT = 8001


class CorrectionMode(str, enum.Enum):
    NONE = "none"
    BARE = "bare"
    FULL = "full"


@dataclass(frozen=True)
class MollowParameters:
    A0_inc: float
    A_plus: float
    A_minus: float
    Gamma0: float
    Gamma_plus: float
    Gamma_minus: float
    Omega_R_eff: float
    omega_L: float
    Gamma: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MollowParameters":
        return cls(**{k: float(data[k]) for k in cls.__dataclass_fields__})


@dataclass(frozen=True)
class GridSpec:
    min: float
    max: float
    count: int = DEFAULT_GRID_COUNT

    def __post_init__(self) -> None:
        if int(self.count) != self.count or self.count < 2:
            raise BadGrid(f"grid needs at least 2 points, got count={self.count!r}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or not self.max > self.min:
            raise BadGrid(f"grid maximum must exceed its minimum, got [{self.min!r}, {self.max!r}]")

    @classmethod
    def default_for(cls, omega_L: float, Omega_R_eff: float, Gamma: float, count: int = DEFAULT_GRID_COUNT) -> "GridSpec":
        half = 1.5 * Omega_R_eff + 10.0 * Gamma
        return cls(omega_L - half, omega_L + half, count)

    @property
    def step(self) -> float:
        return (self.max - self.min) / (self.count - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.count))

    def to_dict(self) -> Dict[str, Any]:
        return {"min": self.min, "max": self.max, "count": int(self.count)}


@dataclass
class SpectrumSamples:
    omega_grid: np.ndarray
    values: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.omega_grid = np.asarray(self.omega_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.omega_grid.shape != self.values.shape or self.omega_grid.ndim != 1:
            raise ValidationError("frequency grid and values must be 1-D arrays of equal length")
        if self.omega_grid.size > 1 and not np.all(np.diff(self.omega_grid) > 0):
            raise ValidationError("frequency grid must be strictly increasing")

    def __len__(self) -> int:
        return int(self.omega_grid.size)

    @property
    def step(self) -> float:
        return float(self.omega_grid[1] - self.omega_grid[0])


def corrected_generalized_rabi(Omega: float, Delta: float, C: float, L_bare: float) -> float:
    """Ω_R → √(Ω²(1−𝓒)² + (Δ − L_bare)²)."""
    return corrected_half_splitting(Omega, Delta, C, L_bare)


def effective_rabi(mode: CorrectionMode, Omega: float, Delta: float, C: float, L_bare: float) -> float:
    mode = CorrectionMode(mode)
    if mode is CorrectionMode.NONE:
        return generalized_rabi(Omega, Delta)
    if mode is CorrectionMode.BARE:
        return corrected_half_splitting(Omega, Delta, 0.0, L_bare)
    return corrected_half_splitting(Omega, Delta, C, L_bare)


def check_secular(Omega_R_eff: float, Gamma: float) -> bool:
    """Warn (and return False) when Ω_R/Γ is below :data:`SECULAR_RATIO`."""
    if Omega_R_eff < SECULAR_RATIO * Gamma:
        logger.warning(
            "Omega_R/Gamma = %.3g is below %g; the secular three-peak spectrum is inaccurate here",
            Omega_R_eff / Gamma,
            SECULAR_RATIO,
        )
        return False
    return True


def mollow_parameters(
    Omega: float,
    Delta: float,
    Gamma: float,
    Omega_R_eff: Optional[float] = None,
    omega_L: float = 0.0,
) -> MollowParameters:
    """Peak weights and half-widths of the secular spectrum.

    ``Omega_R_eff`` replaces Ω_R everywhere; it defaults to √(Ω²+Δ²).
    """
    if not Omega > 0:
        raise DegenerateDrive(f"the Mollow spectrum needs a positive Rabi frequency, got {Omega!r}")
    if not Gamma > 0:
        raise ValidationError(f"decay rate must be positive, got {Gamma!r}")
    OR = generalized_rabi(Omega, Delta) if Omega_R_eff is None else Omega_R_eff
    OR2 = OR * OR
    D2 = Delta * Delta
    O2 = Omega * Omega
    A0 = O2**3 / (4.0 * OR2 * (OR2 + D2) ** 2)
    A_side = O2**2 / (8.0 * OR2 * (OR2 + D2))
    G0 = Gamma * (O2 + 2.0 * D2) / (2.0 * OR2)
    G_side = Gamma * (3.0 * O2 + 2.0 * D2) / (4.0 * OR2)
    return MollowParameters(
        A0_inc=A0,
        A_plus=A_side,
        A_minus=A_side,
        Gamma0=G0,
        Gamma_plus=G_side,
        Gamma_minus=G_side,
        Omega_R_eff=OR,
        omega_L=omega_L,
        Gamma=Gamma,
    )


def incoherent_spectrum(omega, params: MollowParameters):
    """S_inc(ω); accepts scalars or arrays."""
    p = params
    x = np.asarray(omega, dtype=float) - p.omega_L
    centre = p.Gamma0 * p.A0_inc / (x * x + p.Gamma0**2)
    upper = p.Gamma_plus * p.A_plus / ((x - p.Omega_R_eff) ** 2 + p.Gamma_plus**2)
    lower = p.Gamma_minus * p.A_minus / ((x + p.Omega_R_eff) ** 2 + p.Gamma_minus**2)
    value = p.Gamma / math.pi * (centre + upper + lower)
    return float(value) if np.ndim(value) == 0 else value


def total_weight(params: MollowParameters) -> float:
    """∫ S_inc dω = Γ (A₀ + A₊ + A₋)."""
    return params.Gamma * (params.A0_inc + params.A_plus + params.A_minus)


def sample_spectrum(
    params: MollowParameters,
    grid: GridSpec,
    chunk_size: Optional[int] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> SpectrumSamples:
    """Evaluate S_inc on a uniform grid.

    With ``chunk_size`` the grid is evaluated in slices; the result is
    identical to the unchunked evaluation.
    """
    if not isinstance(grid, GridSpec):
        grid = GridSpec(**grid)
    omega = grid.points()
    if chunk_size:
        pieces = [incoherent_spectrum(omega[i : i + chunk_size], params) for i in range(0, omega.size, chunk_size)]
        values = np.concatenate(pieces)
    else:
        values = incoherent_spectrum(omega, params)
    meta = {"parameters": params.to_dict(), "grid": grid.to_dict()}
    meta.update(metadata or {})
    return SpectrumSamples(omega, values, meta)


def spectrum_pair(
    Omega: float,
    Delta: float,
    Gamma: float,
    C: float,
    L_bare: float,
    grid: Optional[GridSpec] = None,
    omega_L: float = 0.0,
    shift_weights_detuning: bool = False,
    modes: Iterable[CorrectionMode] = tuple(CorrectionMode),
    chunk_size: Optional[int] = None,
) -> Dict[CorrectionMode, SpectrumSamples]:
    """Uncorrected, bare-corrected and fully corrected spectra on one grid.

    Without an explicit ``grid`` the default span is built from the largest
    effective Rabi frequency of the requested modes.
    """
    modes = [CorrectionMode(m) for m in modes]
    rabi = {m: effective_rabi(m, Omega, Delta, C, L_bare) for m in modes}
    if grid is None:
        grid = GridSpec.default_for(omega_L, max(rabi.values()), Gamma)
    out: Dict[CorrectionMode, SpectrumSamples] = {}
    for mode in modes:
        check_secular(rabi[mode], Gamma)
        delta_w = Delta - L_bare if (shift_weights_detuning and mode is not CorrectionMode.NONE) else Delta
        params = mollow_parameters(Omega, delta_w, Gamma, rabi[mode], omega_L)
        meta = {
            "mode": mode.value,
            "Omega": Omega,
            "Delta": Delta,
            "C": C if mode is CorrectionMode.FULL else 0.0,
            "L_bare": 0.0 if mode is CorrectionMode.NONE else L_bare,
            "shift_weights_detuning": shift_weights_detuning,
        }
        out[mode] = sample_spectrum(params, grid, chunk_size=chunk_size, metadata=meta)
    return out


# ---------------------------------------------------------------------------
# CSV / JSON export


def sidecar_path(csv_path: Union[str, Path]) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_csv(samples: SpectrumSamples, path: Union[str, Path]) -> Path:
    path = Path(path)
    data = np.column_stack([samples.omega_grid, samples.values])
    np.savetxt(path, data, fmt="%.17g", delimiter=",", header="omega,S_inc", comments="")
    return path


def write_sidecar(samples: SpectrumSamples, path: Union[str, Path], extra: Optional[Dict[str, Any]] = None) -> Path:
    path = Path(path)
    record = dict(samples.metadata)
    record.update(extra or {})
    with open(path, "w", encoding="utf-8") as f:
        json.dump(record, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def read_csv(path: Union[str, Path]) -> SpectrumSamples:
    """Load a spectrum CSV (and its sidecar when present).

    Malformed rows raise :class:`ParseError` naming the file line.
    """
    path = Path(path)
    omega, values = [], []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise ParseError("file is empty", row=1)
        if [h.strip() for h in header] != ["omega", "S_inc"]:
            raise ParseError(f"expected header 'omega,S_inc', got {','.join(header)!r}", row=1)
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 columns, got {len(row)}", row=row_no)
            try:
                w, s = float(row[0]), float(row[1])
            except ValueError:
                raise ParseError(f"non-numeric value in {','.join(row)!r}", row=row_no) from None
            if not (math.isfinite(w) and math.isfinite(s)):
                raise ParseError("non-finite value", row=row_no)
            omega.append(w)
            values.append(s)
    if len(omega) < 2:
        raise ParseError("need at least two samples")
    metadata: Dict[str, Any] = {}
    side = sidecar_path(path)
    if side.exists():
        with open(side, "r", encoding="utf-8") as f:
            try:
                metadata = json.load(f)
            except ValueError as exc:
                raise ParseError(f"invalid sidecar {side}: {exc}") from exc
        if not isinstance(metadata, dict):
            raise ParseError(f"invalid sidecar {side}: expected a JSON object, got {type(metadata).__name__}")
    return SpectrumSamples(np.array(omega), np.array(values), metadata)
