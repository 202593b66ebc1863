"""
radiative
=========

Leading-logarithm Lamb shift of dressed states and the resulting
displacement of the Mollow sidebands.

The bare levels feel the effective potential

    ΔV_Lamb(r) = 4α (Zα) ℓ δ³(r) / (3m²),   ℓ = ln[(Zα)⁻²],

whose expectation in the dressed states gives the approximate shifts
ΔL^(app)_±.  Keeping terms linear in Ω_R and Δ adds ΔC_±, which reduce
to a radiative modification 𝓒 of the Rabi frequency.  Together the two
effects move the sidebands to ω_L ± √(Ω²(1−𝓒)² + (Δ − L_bare)²).

Matrix elements live on :class:`AtomicTransition` in natural units.  The
sideband formulas themselves only need 𝓒 (dimensionless) and L_bare, so
they work in whatever frequency unit the caller uses consistently.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from . import hydrogen
from .constants import PhysicalConstants, codata
from .dressed import generalized_rabi, mixing_angle
from .errors import DegenerateDrive, ValidationError
from .hydrogen import BoundState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AtomicTransition:
    """Two bare levels with every matrix element the corrections need."""

    g: BoundState
    e: BoundState
    omega_R: float
    Gamma: float
    p2_g: float
    p2_e: float
    p_eg_sq: float
    delta3_g: float
    delta3_e: float
    Z: int
    constants: PhysicalConstants

    def __post_init__(self) -> None:
        if not self.omega_R > 0:
            raise ValidationError(f"transition frequency must be positive, got {self.omega_R!r}")
        if not self.Gamma > 0:
            raise ValidationError(f"decay rate must be positive, got {self.Gamma!r}")

    @classmethod
    def from_states(
        cls,
        g: BoundState,
        e: BoundState,
        constants: Optional[PhysicalConstants] = None,
        Gamma: Optional[float] = None,
    ) -> "AtomicTransition":
        """Compute the transition record from hydrogenic states.

        ``Gamma`` (natural units) replaces the computed decay rate, e.g. a
        measured value.
        """
        c = constants or codata()
        return cls(
            g=g,
            e=e,
            omega_R=hydrogen.transition_frequency(g, e, c),
            Gamma=hydrogen.decay_rate(g, e, c, measured=Gamma),
            p2_g=hydrogen.expectation_p_squared(g, c),
            p2_e=hydrogen.expectation_p_squared(e, c),
            p_eg_sq=hydrogen.dipole_p_squared(g, e, c),
            delta3_g=hydrogen.contact_density(g, c),
            delta3_e=hydrogen.contact_density(e, c),
            Z=g.Z,
            constants=c,
        )

    @property
    def dipole(self) -> float:
        """|⟨e|z|g⟩| in natural length units, recovered from |⟨p⟩_eg|²."""
        return math.sqrt(self.p_eg_sq) / (self.constants.electron_mass * self.omega_R)

    @property
    def ell(self) -> float:
        return log_factor(self.Z, self.constants)


@dataclass(frozen=True)
class RadiativeCoefficients:
    ell: float
    L_bare: float
    C: float


@dataclass(frozen=True)
class RadiativeCorrections:
    """All sideband corrections for one drive; the ``−`` members mirror the ``+`` ones."""

    dL_app_plus: Optional[float]
    dL_app_minus: Optional[float]
    dC_plus: Optional[float]
    dC_minus: Optional[float]
    dw_plus: float
    dw_minus: float
    small_dw_plus: float
    small_dw_minus: float
    full_plus: float
    full_minus: float


def log_factor(Z: int, constants: Optional[PhysicalConstants] = None) -> float:
    """ℓ = ln[(Zα)⁻²]."""
    c = constants or codata()
    return -2.0 * math.log(Z * c.alpha)


def _potential_prefactor(tr: AtomicTransition) -> float:
    c = tr.constants
    return 4.0 * c.alpha * (tr.Z * c.alpha) * tr.ell / (3.0 * c.electron_mass**2)


def effective_lamb_potential(tr: AtomicTransition) -> Tuple[float, float]:
    """(⟨g|ΔV_Lamb|g⟩, ⟨e|ΔV_Lamb|e⟩) in natural units."""
    k = _potential_prefactor(tr)
    return k * tr.delta3_g, k * tr.delta3_e


def bare_lamb_shift(tr: AtomicTransition) -> float:
    """L_bare = ⟨e|ΔV_Lamb|e⟩ − ⟨g|ΔV_Lamb|g⟩."""
    v_g, v_e = effective_lamb_potential(tr)
    return v_e - v_g


def approx_dressed_lamb(theta: float, tr: AtomicTransition) -> Tuple[float, float]:
    """ΔL^(app)_± as convex mixtures of the bare-state potential expectations."""
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise ValidationError(f"mixing angle must lie in [0, pi/2], got {theta!r}")
    v_g, v_e = effective_lamb_potential(tr)
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    return c2 * v_e + s2 * v_g, s2 * v_e + c2 * v_g


def sideband_shift_bare(Omega: float, Delta: float, L_bare: float) -> Tuple[float, float]:
    """Δω± = ∓Δ·L_bare/√(Ω²+Δ²)."""
    if Omega == 0 and Delta == 0:
        raise DegenerateDrive("sideband shift is undefined for Omega = Delta = 0")
    dw = -Delta * L_bare / generalized_rabi(Omega, Delta)
    return dw, -dw


def dressed_linear_corrections(
    theta: float, Omega_R: float, Delta: float, tr: AtomicTransition
) -> Tuple[float, float]:
    """ΔC_± evaluated literally; both at the same semiclassical (θ, Ω_R, Δ).

    Result is in the unit of ``Omega_R`` and ``Delta``.
    """
    m2 = tr.constants.electron_mass**2
    pref = tr.constants.alpha / math.pi * tr.ell / m2
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    cos2 = math.cos(2.0 * theta)
    mixing = tr.p_eg_sq * (Delta * cos2 + Omega_R * cos2**2)
    plus = -pref * (c2 * tr.p2_e * (Omega_R + Delta) + s2 * tr.p2_g * (Omega_R - Delta) + mixing)
    minus = pref * (c2 * tr.p2_g * (Omega_R + Delta) + s2 * tr.p2_e * (Omega_R - Delta) + mixing)
    return plus, minus


def radiative_rabi_coefficient(tr: AtomicTransition) -> float:
    """𝓒 = (α/π) ℓ (⟨p²⟩_g + ⟨p²⟩_e)/m²."""
    c = tr.constants
    return c.alpha / math.pi * tr.ell * (tr.p2_g + tr.p2_e) / c.electron_mass**2


def radiative_coefficients(tr: AtomicTransition) -> RadiativeCoefficients:
    return RadiativeCoefficients(ell=tr.ell, L_bare=bare_lamb_shift(tr), C=radiative_rabi_coefficient(tr))


def sideband_shift_rabi(Omega: float, Delta: float, C: float) -> Tuple[float, float]:
    """δω± = ∓𝓒 Ω²/√(Ω²+Δ²)."""
    if Omega == 0 and Delta == 0:
        raise DegenerateDrive("sideband shift is undefined for Omega = Delta = 0")
    dw = -C * Omega**2 / generalized_rabi(Omega, Delta)
    return dw, -dw


def corrected_half_splitting(Omega: float, Delta: float, C: float, L_bare: float) -> float:
    """√(Ω²(1−𝓒)² + (Δ − L_bare)²)."""
    return math.hypot(Omega * (1.0 - C), Delta - L_bare)


def resummed_sideband(omega_L: float, Omega: float, Delta: float, C: float, L_bare: float) -> Tuple[float, float]:
    """Corrected sideband positions ω_L ± √(Ω²(1−𝓒)² + (Δ − L_bare)²)."""
    split = corrected_half_splitting(Omega, Delta, C, L_bare)
    return omega_L + split, omega_L - split


def fully_dressed_shift(Omega: float, Delta: float, C: float, L_bare: float) -> Tuple[float, float]:
    """Δ^(full)𝓛± = ±(√(Ω²(1−𝓒)² + (Δ−L_bare)²) − √(Ω²+Δ²))."""
    shift = corrected_half_splitting(Omega, Delta, C, L_bare) - generalized_rabi(Omega, Delta)
    return shift, -shift


def _rescale(pair: Tuple[float, float], target: float, computed: float) -> Tuple[Optional[float], Optional[float]]:
    """Scale ``pair`` so that it belongs to ``target`` instead of ``computed``."""
    if target == computed:
        return pair
    if computed == 0:
        return None, None
    k = target / computed
    return k * pair[0], k * pair[1]


def radiative_corrections(
    Omega: float,
    Delta: float,
    C: float,
    L_bare: float,
    tr: Optional[AtomicTransition] = None,
    to_units=None,
) -> RadiativeCorrections:
    """Assemble every correction for one drive.

    ``Omega``, ``Delta``, ``C`` and ``L_bare`` are in the caller's unit.
    The dressed-level quantities ΔL^(app)_± and ΔC_± need the transition
    matrix elements; they are left as ``None`` without ``tr``.  ΔL^(app)
    comes out in natural units and is passed through ``to_units`` if given.

    When ``C`` or ``L_bare`` differ from the transition's own values
    (overrides, or zero for a switched-off correction) ΔC_± and ΔL^(app)_±
    are rescaled so that ΔL^(app)_+ − ΔL^(app)_− = Δω_+ and
    ΔC_+ − ΔC_− = δω_+ still hold.
    """
    dw_plus, dw_minus = sideband_shift_bare(Omega, Delta, L_bare)
    sdw_plus, sdw_minus = sideband_shift_rabi(Omega, Delta, C)
    full_plus, full_minus = fully_dressed_shift(Omega, Delta, C, L_bare)
    dL_plus = dL_minus = dC_plus = dC_minus = None
    if tr is not None:
        convert = to_units or (lambda v: v)
        theta = mixing_angle(Omega, Delta)
        dL = tuple(convert(v) for v in approx_dressed_lamb(theta, tr))
        dL_plus, dL_minus = _rescale(dL, L_bare, convert(bare_lamb_shift(tr)))
        dC = dressed_linear_corrections(theta, generalized_rabi(Omega, Delta), Delta, tr)
        dC_plus, dC_minus = _rescale(dC, C, radiative_rabi_coefficient(tr))
    return RadiativeCorrections(
        dL_app_plus=dL_plus,
        dL_app_minus=dL_minus,
        dC_plus=dC_plus,
        dC_minus=dC_minus,
        dw_plus=dw_plus,
        dw_minus=dw_minus,
        small_dw_plus=sdw_plus,
        small_dw_minus=sdw_minus,
        full_plus=full_plus,
        full_minus=full_minus,
    )
