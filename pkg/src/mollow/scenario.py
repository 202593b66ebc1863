"""
scenario
========

Scenario files describe one run: which transition is driven, how hard,
which corrections are applied, the spectrum grid, the output units and an
optional noise model.  They are YAML (JSON is accepted as well)::

    transition: H-1S2P          # preset name, or {Z: 1, g: 1S, e: 2P, gamma_si: 6.265e8}
    units: gamma                # gamma | natural | si
    drive:
      Omega: 25.0               # or  h: 1000   (exactly one of the two)
      Delta: 10.0
      omega_L: null             # spectra are offsets from omega_L when absent
    corrections:
      mode: full                # none | bare | full
      C: 0.02                   # optional overrides of the computed values
      L_bare: 5.0
      shift_weights_detuning: false
    grid: {min: -40, max: 40, count: 8001}
    noise: {sigma: 1.0e-3, seed: 12345}

All frequencies are in the scenario's units.  Presets live in the
package's ``presets.yaml``.  Validation errors name the offending key and,
when the scenario was read from a file, its line.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from .constants import PhysicalConstants, UnitMode, UnitSystem, codata
from .dressed import DriveParameters
from .errors import ConfigError, MollowError
from .hydrogen import BoundState
from .radiative import AtomicTransition, radiative_coefficients
from .spectrum import CorrectionMode, GridSpec, effective_rabi

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionSpec:
    Z: int = 1
    g: str = "1S"
    e: str = "2P"
    gamma_si: Optional[float] = None
    preset: Optional[str] = None

    def to_value(self) -> Union[str, Dict[str, Any]]:
        if self.preset:
            return self.preset
        out: Dict[str, Any] = {"Z": self.Z, "g": self.g, "e": self.e}
        if self.gamma_si is not None:
            out["gamma_si"] = self.gamma_si
        return out


@dataclass(frozen=True)
class DriveSpec:
    Omega: Optional[float] = None
    h: Optional[float] = None
    Delta: float = 0.0
    omega_L: Optional[float] = None


@dataclass(frozen=True)
class CorrectionsSpec:
    mode: CorrectionMode = CorrectionMode.FULL
    C: Optional[float] = None
    L_bare: Optional[float] = None
    shift_weights_detuning: bool = False


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float
    seed: int = 0


@dataclass(frozen=True)
class Scenario:
    transition: TransitionSpec = field(default_factory=lambda: TransitionSpec(preset="H-1S2P"))
    drive: DriveSpec = field(default_factory=lambda: DriveSpec(h=1000.0))
    corrections: CorrectionsSpec = field(default_factory=CorrectionsSpec)
    grid: Optional[GridSpec] = None
    units: UnitMode = UnitMode.GAMMA
    noise: Optional[NoiseSpec] = None
    name: Optional[str] = None

    # -- serialisation ----------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        drive: Dict[str, Any] = {"Delta": self.drive.Delta}
        if self.drive.Omega is not None:
            drive["Omega"] = self.drive.Omega
        if self.drive.h is not None:
            drive["h"] = self.drive.h
        if self.drive.omega_L is not None:
            drive["omega_L"] = self.drive.omega_L
        corr: Dict[str, Any] = {"mode": self.corrections.mode.value}
        if self.corrections.C is not None:
            corr["C"] = self.corrections.C
        if self.corrections.L_bare is not None:
            corr["L_bare"] = self.corrections.L_bare
        if self.corrections.shift_weights_detuning:
            corr["shift_weights_detuning"] = True
        out: Dict[str, Any] = {
            "transition": self.transition.to_value(),
            "units": self.units.value,
            "drive": drive,
            "corrections": corr,
        }
        if self.name:
            out["name"] = self.name
        if self.grid is not None:
            out["grid"] = self.grid.to_dict()
        if self.noise is not None:
            out["noise"] = {"sigma": self.noise.sigma, "seed": self.noise.seed}
        return out

    @classmethod
    def from_mapping(cls, data: Any) -> "Scenario":
        """Validate a parsed scenario document."""
        data = _mapping(data, "")
        _reject_unknown(data, {"name", "transition", "units", "drive", "corrections", "grid", "noise"}, "")
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise ConfigError("expected a string", key="name")
        return cls(
            transition=_parse_transition(data.get("transition", "H-1S2P")),
            drive=_parse_drive(data.get("drive", {})),
            corrections=_parse_corrections(data.get("corrections", {})),
            grid=_parse_grid(data.get("grid")),
            units=_parse_enum(UnitMode, data.get("units", "gamma"), "units"),
            noise=_parse_noise(data.get("noise")),
            name=name,
        )

    def with_mode(self, mode: CorrectionMode) -> "Scenario":
        return replace(self, corrections=replace(self.corrections, mode=CorrectionMode(mode)))

    def with_seed(self, seed: int) -> "Scenario":
        if self.noise is None:
            raise ConfigError("--seed needs a noise block in the scenario", key="noise")
        return replace(self, noise=replace(self.noise, seed=int(seed)))


# ---------------------------------------------------------------------------
# Field parsers


def _mapping(value: Any, key: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"expected a mapping, got {type(value).__name__}", key=key or None)
    return value


def _join(prefix: str, key: str) -> str:
    return f"{prefix}.{key}" if prefix else key


def _reject_unknown(data: Dict[str, Any], allowed: set, prefix: str) -> None:
    for key in data:
        if key not in allowed:
            raise ConfigError(f"unknown key (allowed: {', '.join(sorted(allowed))})", key=_join(prefix, str(key)))


def _number(value: Any, key: str, positive: bool = False, optional: bool = False) -> Optional[float]:
    if value is None and optional:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", key=key)
    value = float(value)
    if positive and not value > 0:
        raise ConfigError(f"must be positive, got {value!r}", key=key)
    return value


def _parse_enum(enum_cls, value: Any, key: str):
    try:
        return enum_cls(value)
    except ValueError:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"expected one of {choices}, got {value!r}", key=key) from None


def _parse_transition(value: Any) -> TransitionSpec:
    if isinstance(value, str):
        presets = load_presets().get("transitions", {})
        if value not in presets:
            raise ConfigError(f"unknown transition preset {value!r}", key="transition")
        base = _parse_transition(presets[value])
        return TransitionSpec(base.Z, base.g, base.e, base.gamma_si, preset=value)
    data = _mapping(value, "transition")
    _reject_unknown(data, {"Z", "g", "e", "gamma_si"}, "transition")
    Z = data.get("Z", 1)
    if isinstance(Z, bool) or not isinstance(Z, int) or Z < 1:
        raise ConfigError(f"expected a positive integer, got {Z!r}", key="transition.Z")
    spec = TransitionSpec(
        Z=Z,
        g=str(data.get("g", "1S")),
        e=str(data.get("e", "2P")),
        gamma_si=_number(data.get("gamma_si"), "transition.gamma_si", positive=True, optional=True),
    )
    for key in ("g", "e"):
        try:
            BoundState.from_label(getattr(spec, key), Z)
        except ValueError as exc:
            raise ConfigError(str(exc), key=f"transition.{key}") from None
    return spec


def _parse_drive(value: Any) -> DriveSpec:
    data = _mapping(value, "drive")
    _reject_unknown(data, {"Omega", "h", "Delta", "omega_L"}, "drive")
    has_omega, has_h = data.get("Omega") is not None, data.get("h") is not None
    if has_omega == has_h:
        raise ConfigError("give exactly one of 'Omega' or 'h'", key="drive")
    Omega = _number(data.get("Omega"), "drive.Omega", optional=True)
    if Omega is not None and Omega < 0:
        raise ConfigError(f"must be non-negative, got {Omega!r}", key="drive.Omega")
    return DriveSpec(
        Omega=Omega,
        h=_number(data.get("h"), "drive.h", positive=True, optional=True),
        Delta=_number(data.get("Delta", 0.0), "drive.Delta"),
        omega_L=_number(data.get("omega_L"), "drive.omega_L", optional=True),
    )


def _parse_corrections(value: Any) -> CorrectionsSpec:
    data = _mapping(value, "corrections")
    _reject_unknown(data, {"mode", "C", "L_bare", "shift_weights_detuning"}, "corrections")
    flag = data.get("shift_weights_detuning", False)
    if not isinstance(flag, bool):
        raise ConfigError(f"expected true or false, got {flag!r}", key="corrections.shift_weights_detuning")
    return CorrectionsSpec(
        mode=_parse_enum(CorrectionMode, data.get("mode", "full"), "corrections.mode"),
        C=_number(data.get("C"), "corrections.C", optional=True),
        L_bare=_number(data.get("L_bare"), "corrections.L_bare", optional=True),
        shift_weights_detuning=flag,
    )


def _parse_grid(value: Any) -> Optional[GridSpec]:
    if value is None:
        return None
    data = _mapping(value, "grid")
    _reject_unknown(data, {"min", "max", "count"}, "grid")
    for key in ("min", "max"):
        if key not in data:
            raise ConfigError("missing", key=f"grid.{key}")
    count = data.get("count", 8001)
    if isinstance(count, bool) or not isinstance(count, int):
        raise ConfigError(f"expected an integer, got {count!r}", key="grid.count")
    # GridSpec raises BadGrid for an empty or reversed range.
    return GridSpec(_number(data["min"], "grid.min"), _number(data["max"], "grid.max"), count)


def _parse_noise(value: Any) -> Optional[NoiseSpec]:
    if value is None:
        return None
    data = _mapping(value, "noise")
    _reject_unknown(data, {"sigma", "seed"}, "noise")
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"expected a non-negative integer, got {seed!r}", key="noise.seed")
    return NoiseSpec(sigma=_number(data.get("sigma"), "noise.sigma", positive=True), seed=seed)


# ---------------------------------------------------------------------------
# Loading


@lru_cache(maxsize=1)
def load_presets() -> Dict[str, Any]:
    text = resources.files("mollow").joinpath("presets.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text) or {}


def load_preset(name: str) -> Scenario:
    presets = load_presets().get("scenarios", {})
    if name not in presets:
        raise ConfigError(f"unknown scenario preset {name!r} (available: {', '.join(sorted(presets))})")
    return Scenario.from_mapping(presets[name])


def _line_of(node: Optional[yaml.Node], key: Optional[str]) -> Optional[int]:
    """1-based line of the dotted ``key`` inside a composed YAML tree."""
    if node is None:
        return None
    line = node.start_mark.line + 1
    if not key:
        return line
    for part in key.split("."):
        if not isinstance(node, yaml.MappingNode):
            break
        for k, v in node.value:
            if k.value == part:
                line = k.start_mark.line + 1
                node = v
                break
        else:
            break
    return line


def parse_scenario_text(text: str, source: str = "<scenario>") -> Scenario:
    try:
        data = yaml.safe_load(text)
        tree = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark else None
        raise ConfigError(f"invalid YAML in {source}: {exc.problem}", line=line) from exc
    try:
        return Scenario.from_mapping(data if data is not None else {})
    except ConfigError as exc:
        if exc.line is None:
            raise ConfigError(exc.message, key=exc.key, line=_line_of(tree, exc.key)) from exc
        raise


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read a scenario file; IO problems propagate as :class:`OSError`."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_scenario_text(text, source=str(path))


# ---------------------------------------------------------------------------
# Resolution


@dataclass(frozen=True)
class ResolvedScenario:
    """A scenario with every physical quantity evaluated in its units.

    ``C`` and ``L_bare`` are the values the correction mode actually applies;
    ``C_value`` and ``L_bare_value`` are the underlying numbers.
    """

    scenario: Scenario
    transition: AtomicTransition
    units: UnitSystem
    Gamma: float
    Omega: float
    Delta: float
    omega_L: float
    h: float
    ell: float
    C_value: float
    L_bare_value: float
    C: float
    L_bare: float
    overrides: List[str]

    @property
    def mode(self) -> CorrectionMode:
        return self.scenario.corrections.mode

    def omega_R_eff(self, mode: Optional[CorrectionMode] = None) -> float:
        return effective_rabi(mode or self.mode, self.Omega, self.Delta, self.C_value, self.L_bare_value)

    def grid_for(self, modes) -> GridSpec:
        if self.scenario.grid is not None:
            return self.scenario.grid
        widest = max(self.omega_R_eff(m) for m in modes)
        return GridSpec.default_for(self.omega_L, widest, self.Gamma)


def resolve(scenario: Scenario, constants: Optional[PhysicalConstants] = None) -> ResolvedScenario:
    c = constants or codata()
    t = scenario.transition
    g, e = BoundState.from_label(t.g, t.Z), BoundState.from_label(t.e, t.Z)
    gamma_nat = c.rad_per_s_to_energy(t.gamma_si) if t.gamma_si is not None else None
    try:
        tr = AtomicTransition.from_states(g, e, c, Gamma=gamma_nat)
    except MollowError as exc:
        raise ConfigError(str(exc), key="transition") from exc
    units = UnitSystem(scenario.units, reference_gamma=tr.Gamma, constants=c)
    Gamma = units.from_natural(tr.Gamma)
    coeffs = radiative_coefficients(tr)

    d = scenario.drive
    Omega = d.Omega if d.Omega is not None else d.h * Gamma
    corr = scenario.corrections
    overrides = []
    C_value = coeffs.C
    L_value = units.from_natural(coeffs.L_bare)
    if corr.C is not None:
        C_value = corr.C
        overrides.append("C")
    if corr.L_bare is not None:
        L_value = corr.L_bare
        overrides.append("L_bare")
    if overrides:
        logger.warning("Scenario overrides take precedence over computed values: %s", ", ".join(overrides))
    if d.omega_L is not None:
        omega_R = units.from_natural(tr.omega_R)
        if not DriveParameters(Omega, d.Delta, omega_L=d.omega_L).consistent_with(omega_R):
            logger.warning(
                "drive.omega_L - omega_R = %.10g but drive.Delta = %.10g (%s units); spectra use Delta as given",
                d.omega_L - omega_R,
                d.Delta,
                units.label,
            )
    C_applied = C_value if corr.mode is CorrectionMode.FULL else 0.0
    L_applied = 0.0 if corr.mode is CorrectionMode.NONE else L_value
    resolved = ResolvedScenario(
        scenario=scenario,
        transition=tr,
        units=units,
        Gamma=Gamma,
        Omega=Omega,
        Delta=d.Delta,
        omega_L=d.omega_L if d.omega_L is not None else 0.0,
        h=Omega / Gamma,
        ell=coeffs.ell,
        C_value=C_value,
        L_bare_value=L_value,
        C=C_applied,
        L_bare=L_applied,
        overrides=overrides,
    )
    logger.debug("Resolved scenario %s: %s", scenario.name or "<unnamed>", resolved)
    return resolved
