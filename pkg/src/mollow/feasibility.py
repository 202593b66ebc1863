"""
feasibility
===========

Order-of-magnitude estimates for observing the radiative sideband shift:
the shift-to-width ratio r₁, the ratio r₂ to the Bloch–Siegert shift,
Zα-expansion scalings, and the laser power needed to reach a given
h = Ω/Γ on a hydrogenic 1S–2P transition.

Power conventions are module constants so an alternative reading is a
one-line change:

* ``DIPOLE_SUBLEVEL_FACTOR`` – d = factor · e · |⟨2p, m=0| z |1s⟩|.  The
  default √3 uses the reduced (sublevel-summed) dipole; ``1.0`` gives the
  bare m = 0 element.
* ``INTENSITY_FACTOR`` – I = factor · ε₀ c E², with E the field amplitude.
* ``GAUSSIAN_AREA_FACTOR`` – P = I_peak · factor · π w₀² for a Gaussian
  beam of 1/e² waist w₀.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from .constants import PhysicalConstants, codata
from .errors import ValidationError
from .hydrogen import BoundState
from .radiative import (
    AtomicTransition,
    log_factor,
    radiative_rabi_coefficient,
    sideband_shift_rabi,
)

logger = logging.getLogger(__name__)

DIPOLE_SUBLEVEL_FACTOR = math.sqrt(3.0)
INTENSITY_FACTOR = 0.5
GAUSSIAN_AREA_FACTOR = 0.5

#: Continuous-wave Lyman-α power available today (W).
AVAILABLE_POWER = 20e-9


def ratio_r1(h: float, C: float) -> float:
    """Shift-to-width estimate r₁ ∼ h𝓒."""
    return h * C


def ratio_r1_exact(Omega: float, Delta: float, C: float, Gamma: float) -> float:
    """r₁ = |δω₊|/Γ from the closed-form Rabi shift."""
    if not Gamma > 0:
        raise ValidationError(f"decay rate must be positive, got {Gamma!r}")
    plus, _ = sideband_shift_rabi(Omega, Delta, C)
    return abs(plus) / Gamma


def bloch_siegert_estimate(Omega: float, omega_L: float) -> float:
    """Ω³/ω_L², the resonant Bloch–Siegert shift up to an O(1) factor."""
    if not omega_L > 0:
        raise ValidationError(f"laser frequency must be positive, got {omega_L!r}")
    return Omega**3 / omega_L**2


def ratio_r2(Z: int, h: float, constants: Optional[PhysicalConstants] = None) -> float:
    """r₂ ∼ ℓ / (α (Zα)²) · h⁻²."""
    if not h > 0:
        raise ValidationError(f"h must be positive, got {h!r}")
    c = constants or codata()
    return log_factor(Z, c) / (c.alpha * (Z * c.alpha) ** 2) / h**2


def ratio_r2_pipeline(Omega: float, omega_L: float, C: float) -> float:
    """|δω₊| / (Ω³/ω_L²) at resonance, from the two closed forms."""
    plus, _ = sideband_shift_rabi(Omega, 0.0, C)
    return abs(plus) / bloch_siegert_estimate(Omega, omega_L)


@dataclass(frozen=True)
class ZAlphaScaling:
    omega_L_est: float
    Gamma_est: float
    C_est: float


def zalpha_scaling(Z: int, constants: Optional[PhysicalConstants] = None) -> ZAlphaScaling:
    """ω_L ∼ (Zα)²m, Γ ∼ α(Zα)⁴m, 𝓒 ∼ α(Zα)²ℓ, without numeric prefactors."""
    if Z < 1:
        raise ValidationError(f"nuclear charge must be >= 1, got {Z!r}")
    c = constants or codata()
    za = Z * c.alpha
    return ZAlphaScaling(
        omega_L_est=za**2 * c.electron_mass,
        Gamma_est=c.alpha * za**4 * c.electron_mass,
        C_est=c.alpha * za**2 * log_factor(Z, c),
    )


def wavelength(tr: AtomicTransition) -> float:
    """Resonant wavelength 2πc/ω_R in metres."""
    c = tr.constants
    return 2.0 * math.pi * c.c / c.energy_to_rad_per_s(tr.omega_R)


def required_power(
    h: float,
    tr: AtomicTransition,
    beam_waist: float,
    constants: Optional[PhysicalConstants] = None,
    dipole_factor: float = DIPOLE_SUBLEVEL_FACTOR,
) -> float:
    """Optical power (W) giving Ω = hΓ at the focus of a Gaussian beam.

    ``beam_waist`` is the 1/e² intensity radius in metres.
    """
    if not h > 0:
        raise ValidationError(f"h must be positive, got {h!r}")
    if not beam_waist > 0:
        raise ValidationError(f"beam waist must be positive, got {beam_waist!r}")
    c = constants or tr.constants
    rabi = h * c.energy_to_rad_per_s(tr.Gamma)
    dipole = dipole_factor * c.elementary_charge * c.length_to_si(tr.dipole)
    field = c.hbar * rabi / dipole
    intensity = INTENSITY_FACTOR * c.epsilon0 * c.c * field**2
    return intensity * GAUSSIAN_AREA_FACTOR * math.pi * beam_waist**2


def available_power_gap(required: float, available: float = AVAILABLE_POWER) -> float:
    if not available > 0:
        raise ValidationError(f"available power must be positive, got {available!r}")
    return required / available


@dataclass(frozen=True)
class FeasibilityReport:
    Z: int
    h: float
    C: float
    r1_estimate: float
    r1_exact: float
    r2_scaling: float
    r2_pipeline: float
    bloch_siegert_rad_per_s: float
    Gamma_rad_per_s: float
    omega_L_rad_per_s: float
    wavelength_m: float
    beam_waist_m: float
    required_power_W: float
    available_power_W: float
    power_gap: float
    omega_L_est: float
    Gamma_est: float
    C_est: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def feasibility_report(
    Z: int = 1,
    h: float = 1000.0,
    waist_over_lambda: float = 1.0,
    available_power: float = AVAILABLE_POWER,
    constants: Optional[PhysicalConstants] = None,
) -> FeasibilityReport:
    """Evaluate every estimate for a resonantly driven 1S–2P transition of charge Z."""
    if not h > 0:
        raise ValidationError(f"h must be positive, got {h!r}")
    if not waist_over_lambda > 0:
        raise ValidationError(f"waist must be positive, got {waist_over_lambda!r}")
    c = constants or codata()
    tr = AtomicTransition.from_states(BoundState.from_label("1S", Z), BoundState.from_label("2P", Z), c)
    C = radiative_rabi_coefficient(tr)
    Omega = h * tr.Gamma
    omega_L = tr.omega_R
    waist = waist_over_lambda * wavelength(tr)
    power = required_power(h, tr, waist, c)
    scaling = zalpha_scaling(Z, c)
    report = FeasibilityReport(
        Z=Z,
        h=h,
        C=C,
        r1_estimate=ratio_r1(h, C),
        r1_exact=ratio_r1_exact(Omega, 0.0, C, tr.Gamma),
        r2_scaling=ratio_r2(Z, h, c),
        r2_pipeline=ratio_r2_pipeline(Omega, omega_L, C),
        bloch_siegert_rad_per_s=c.energy_to_rad_per_s(bloch_siegert_estimate(Omega, omega_L)),
        Gamma_rad_per_s=c.energy_to_rad_per_s(tr.Gamma),
        omega_L_rad_per_s=c.energy_to_rad_per_s(omega_L),
        wavelength_m=wavelength(tr),
        beam_waist_m=waist,
        required_power_W=power,
        available_power_W=available_power,
        power_gap=available_power_gap(power, available_power),
        omega_L_est=scaling.omega_L_est,
        Gamma_est=scaling.Gamma_est,
        C_est=scaling.C_est,
    )
    logger.debug("Feasibility for Z=%d, h=%g: %s", Z, h, report)
    return report
