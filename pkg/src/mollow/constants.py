"""
constants
=========

Physical constants and the three unit systems used throughout the
package.

Internally every atomic quantity is computed in natural units
(ħ = c = ε₀ = 1, energies in units of the electron mass, so ``m = 1``).
:class:`UnitSystem` converts frequencies and energies between that
system, SI angular frequencies (rad/s) and the dimensionless system in
which the decay rate Γ of the driven transition is the unit.

The numbers come from ``constants.yaml`` shipped inside the package so
that results are reproducible bit for bit.  A key/value YAML file with
any subset of the same keys may override them::

    alpha: 7.2973525693e-3
    electron_mass_kg: 9.1093837015e-31
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

#: Keys accepted in a constants override file.
CONSTANT_KEYS = (
    "alpha",
    "electron_mass_kg",
    "hbar",
    "c",
    "epsilon0",
    "elementary_charge",
    "bohr_radius",
)

#: Allowed relative disagreement between the tabulated and derived Bohr radius.
BOHR_RADIUS_RTOL = 1e-8


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable constants record.

    ``electron_mass`` is the electron mass in natural units and therefore
    always 1; ``electron_mass_kg`` is its SI value.
    """

    alpha: float
    electron_mass_kg: float
    hbar: float
    c: float
    epsilon0: float
    elementary_charge: float
    bohr_radius: float
    electron_mass: float = 1.0

    @property
    def rest_energy_rad_per_s(self) -> float:
        """One natural energy unit (m c²/ħ) expressed in rad/s."""
        return self.electron_mass_kg * self.c**2 / self.hbar

    @property
    def hartree(self) -> float:
        """Hartree energy α²m in natural units."""
        return self.alpha**2 * self.electron_mass

    @property
    def hartree_to_rad_per_s(self) -> float:
        return self.alpha**2 * self.rest_energy_rad_per_s

    @property
    def natural_length_m(self) -> float:
        """One natural length unit (reduced Compton wavelength ħ/(m c)) in metres."""
        return self.hbar / (self.electron_mass_kg * self.c)

    @property
    def derived_bohr_radius(self) -> float:
        """a₀ = ħ/(m c α) in metres; lengths are converted with this, not the tabulated value."""
        return self.natural_length_m / self.alpha

    def bohr_radius_mismatch(self) -> float:
        """Relative difference between the tabulated and the derived a₀."""
        return abs(self.bohr_radius / self.derived_bohr_radius - 1.0)

    def energy_to_rad_per_s(self, value: float) -> float:
        return value * self.rest_energy_rad_per_s

    def rad_per_s_to_energy(self, value: float) -> float:
        return value / self.rest_energy_rad_per_s

    def length_to_si(self, value: float) -> float:
        return value * self.natural_length_m

    def length_from_si(self, value: float) -> float:
        return value / self.natural_length_m

    def as_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name in CONSTANT_KEYS}


def _read_yaml(source: Union[str, Path]) -> Dict[str, Any]:
    with open(source, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.MarkedYAMLError as exc:
            line = exc.problem_mark.line + 1 if exc.problem_mark else None
            raise ConfigError(f"invalid YAML in {source}: {exc.problem}", line=line) from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{source} must contain a mapping of constant names to values")
    return data


def _coerce(values: Dict[str, Any]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for key, value in values.items():
        if key == "version":
            continue
        if key not in CONSTANT_KEYS:
            raise ConfigError("unknown constant", key=key)
        try:
            number = float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"expected a number, got {value!r}", key=key) from exc
        if not number > 0:
            raise ConfigError("constants must be positive", key=key)
        out[key] = number
    return out


@lru_cache(maxsize=1)
def codata() -> PhysicalConstants:
    """The frozen table embedded in the package."""
    text = resources.files("mollow").joinpath("constants.yaml").read_text(encoding="utf-8")
    values = _coerce(yaml.safe_load(text))
    return PhysicalConstants(**values)


def load_constants(path: Optional[Union[str, Path]] = None) -> PhysicalConstants:
    """Return the embedded constants, optionally overridden by ``path``."""
    base = codata()
    if path is None:
        return base
    overrides = _coerce(_read_yaml(path))
    if overrides:
        logger.info("Overriding constants from %s: %s", path, ", ".join(sorted(overrides)))
    constants = replace(base, **overrides)
    if constants.bohr_radius_mismatch() > BOHR_RADIUS_RTOL:
        logger.warning(
            "bohr_radius %.10g m disagrees with hbar/(m c alpha) = %.10g m; lengths use the derived value",
            constants.bohr_radius,
            constants.derived_bohr_radius,
        )
    return constants


class UnitMode(str, enum.Enum):
    GAMMA = "gamma"
    NATURAL = "natural"
    SI = "si"


@dataclass(frozen=True)
class UnitSystem:
    """Frequency/energy unit system.

    Parameters
    ----------
    mode:
        One of :class:`UnitMode`.
    reference_gamma:
        Decay rate in natural units; the unit of the ``gamma`` mode.
    constants:
        Constants used for the SI conversion.
    """

    mode: UnitMode = UnitMode.NATURAL
    reference_gamma: Optional[float] = None
    constants: PhysicalConstants = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", UnitMode(self.mode))
        if self.constants is None:
            object.__setattr__(self, "constants", codata())
        if self.mode is UnitMode.GAMMA and not (self.reference_gamma and self.reference_gamma > 0):
            raise ConfigError("the gamma unit system needs a positive reference decay rate", key="units")

    @property
    def label(self) -> str:
        return {UnitMode.GAMMA: "Gamma", UnitMode.NATURAL: "m", UnitMode.SI: "rad/s"}[self.mode]

    def to_natural(self, value: Any) -> Any:
        if self.mode is UnitMode.NATURAL:
            return value
        if self.mode is UnitMode.SI:
            return value / self.constants.rest_energy_rad_per_s
        return value * self.reference_gamma

    def from_natural(self, value: Any) -> Any:
        if self.mode is UnitMode.NATURAL:
            return value
        if self.mode is UnitMode.SI:
            return value * self.constants.rest_energy_rad_per_s
        return value / self.reference_gamma

    def convert(self, value: Any, other: "UnitSystem") -> Any:
        """Express ``value`` (given in this system) in ``other``."""
        return other.from_natural(self.to_natural(value))
