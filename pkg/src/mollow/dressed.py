"""
dressed
=======

Semiclassical dressed states of a laser-driven two-level atom.

The bare states |e, n⟩ and |g, n+1⟩ of one manifold mix into

    |(+, n)⟩ =  cos θ |e, n⟩ + sin θ |g, n+1⟩
    |(−, n)⟩ = −sin θ |e, n⟩ + cos θ |g, n+1⟩

with tan 2θ = −Ω/Δ.  That relation is two-valued; the branch used here is
θ ∈ [0, π/2] with sin 2θ = Ω/Ω_R and cos 2θ = −Δ/Ω_R, so that |(+, n)⟩
is always the upper dressed level.

The photon number n never enters the numbers (Ω_n, Ω_R^(n) and θ_n are
replaced by their semiclassical values); it is kept only as a display tag.
All functions are homogeneous in frequency and accept any consistent unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateDrive, ValidationError

#: Relative tolerance of the Δ = ω_L − ω_R consistency check.
CONSISTENCY_RTOL = 1e-9


@dataclass(frozen=True)
class DriveParameters:
    """Laser drive: Rabi frequency ``Omega``, detuning ``Delta`` = ω_L − ω_R.

    ``h`` = Ω/Γ is filled in when a decay rate is known.
    """

    Omega: float
    Delta: float
    omega_L: Optional[float] = None
    Gamma: Optional[float] = None
    h: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.Omega >= 0:
            raise ValidationError(f"Rabi frequency must be non-negative, got {self.Omega!r}")
        if self.Gamma is not None:
            if not self.Gamma > 0:
                raise ValidationError(f"decay rate must be positive, got {self.Gamma!r}")
            object.__setattr__(self, "h", self.Omega / self.Gamma)

    @classmethod
    def from_h(cls, h: float, Gamma: float, Delta: float = 0.0, omega_L: Optional[float] = None) -> "DriveParameters":
        return cls(Omega=h * Gamma, Delta=Delta, omega_L=omega_L, Gamma=Gamma)

    @property
    def Omega_R(self) -> float:
        return generalized_rabi(self.Omega, self.Delta)

    def consistent_with(self, omega_R: float) -> bool:
        """True when Δ = ω_L − ω_R holds (or ω_L is unknown)."""
        if self.omega_L is None:
            return True
        expected = self.omega_L - omega_R
        scale = max(abs(self.omega_L), abs(omega_R), abs(self.Delta), 1e-300)
        return abs(expected - self.Delta) <= CONSISTENCY_RTOL * scale


@dataclass(frozen=True)
class DressedPair:
    theta: float
    omega_R_gen: float
    E_plus: Optional[float] = None
    E_minus: Optional[float] = None
    n: Optional[int] = None

    @property
    def amplitudes(self) -> np.ndarray:
        """Rows are |(+)⟩ and |(−)⟩ in the bare basis (|e, n⟩, |g, n+1⟩)."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, s], [-s, c]])


def mixing_angle(Omega: float, Delta: float) -> float:
    """θ ∈ [0, π/2] with sin 2θ = Ω/Ω_R, cos 2θ = −Δ/Ω_R."""
    if Omega == 0 and Delta == 0:
        raise DegenerateDrive("mixing angle is undefined for Omega = Delta = 0")
    return 0.5 * math.atan2(Omega, -Delta)


def generalized_rabi(Omega: float, Delta: float) -> float:
    return math.hypot(Omega, Delta)


def dressed_energies(n: int, omega_L: float, omega_R: float, Omega_R: float) -> Tuple[float, float]:
    """E_{±,n} = (n + ½) ω_L + ½ ω_R ± ½ Ω_R."""
    if int(n) != n or n < 0:
        raise ValidationError(f"manifold index must be a non-negative integer, got {n!r}")
    centre = (n + 0.5) * omega_L + 0.5 * omega_R
    return centre + 0.5 * Omega_R, centre - 0.5 * Omega_R


def sideband_frequencies(omega_L: float, Omega_R: float) -> Tuple[float, float]:
    """ω± = E_{±,n} − E_{∓,n−1} = ω_L ± Ω_R."""
    return omega_L + Omega_R, omega_L - Omega_R


def dress(
    Omega: float,
    Delta: float,
    n: Optional[int] = None,
    omega_L: Optional[float] = None,
    omega_R: Optional[float] = None,
) -> DressedPair:
    """Build the dressed pair; energies are filled in when ω_L and ω_R are known."""
    theta = mixing_angle(Omega, Delta)
    Omega_R = generalized_rabi(Omega, Delta)
    E_plus = E_minus = None
    if omega_L is not None and omega_R is not None:
        E_plus, E_minus = dressed_energies(n or 0, omega_L, omega_R, Omega_R)
    return DressedPair(theta=theta, omega_R_gen=Omega_R, E_plus=E_plus, E_minus=E_minus, n=n)
