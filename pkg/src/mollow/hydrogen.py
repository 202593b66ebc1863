"""
hydrogen
========

Nonrelativistic Schrödinger–Coulomb states and the matrix elements that
enter the radiative corrections: energies, contact densities ⟨δ³(r)⟩,
⟨p²⟩ expectation values and the 1S–2P dipole element.

All quantities are in natural units (ħ = c = 1, ``m = constants.electron_mass``).
Lengths are therefore measured in 1/m and the Bohr radius is 1/(αm).

Each closed form has an independent numerical counterpart (``numeric_*``)
built from the radial wavefunction by adaptive quadrature on
``[0, 50 n² a₀/Z]``.  The numerical versions normalise the wavefunction
themselves, so they do not share any prefactor with the closed forms.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import genlaguerre

from .constants import PhysicalConstants, codata
from .errors import UnsupportedTransition

_L_LETTERS = "SPDFGHIK"
_LABEL_RE = re.compile(r"^\s*(\d+)\s*([A-Za-z])\s*$")

#: Quadrature settings of the oracle.
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 400
QUAD_RANGE = 50.0  # upper limit in units of n² a₀ / Z

#: |⟨n'l'm=0| z |n l m=0⟩| in units of a₀/Z, keyed by ((n, l), (n', l')).
#: Linear polarization drives the m = 0 component only.
_DIPOLE_TABLE: Dict[Tuple[Tuple[int, int], Tuple[int, int]], float] = {
    ((1, 0), (2, 1)): 128.0 * math.sqrt(2.0) / 243.0,
}


@dataclass(frozen=True)
class BoundState:
    """Hydrogenic bound state |n l⟩ of a nucleus with charge ``Z``."""

    Z: int
    n: int
    l: int
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if int(self.Z) != self.Z or self.Z < 1:
            raise ValueError(f"nuclear charge must be a positive integer, got {self.Z!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"principal quantum number must be a positive integer, got {self.n!r}")
        if int(self.l) != self.l or not 0 <= self.l < self.n:
            raise ValueError(f"orbital quantum number must satisfy 0 <= l < n, got l={self.l!r}, n={self.n}")
        if not self.label:
            object.__setattr__(self, "label", f"{self.n}{_L_LETTERS[self.l]}")

    @classmethod
    def from_label(cls, label: str, Z: int = 1) -> "BoundState":
        """Parse a spectroscopic label such as ``"1S"`` or ``"2p"``."""
        m = _LABEL_RE.match(label)
        if not m:
            raise ValueError(f"cannot parse state label {label!r}")
        n = int(m.group(1))
        letter = m.group(2).upper()
        if letter not in _L_LETTERS:
            raise ValueError(f"unknown orbital letter in {label!r}")
        return cls(Z=Z, n=n, l=_L_LETTERS.index(letter), label=f"{n}{letter}")


def _scaled_bohr(state: BoundState, constants: PhysicalConstants) -> float:
    """a₀/Z in natural length units."""
    return 1.0 / (state.Z * constants.alpha * constants.electron_mass)


def hydrogen_energy(state: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """Schrödinger–Coulomb energy −(Zα)² m / (2n²)."""
    c = constants or codata()
    return -((state.Z * c.alpha) ** 2) * c.electron_mass / (2.0 * state.n**2)


def transition_frequency(g: BoundState, e: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """ω_R = E_e − E_g."""
    return hydrogen_energy(e, constants) - hydrogen_energy(g, constants)


def contact_density(state: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """⟨δ³(r)⟩ = |ψ(0)|²; exactly zero for l ≥ 1."""
    if state.l > 0:
        return 0.0
    c = constants or codata()
    return (state.Z * c.alpha * c.electron_mass) ** 3 / (math.pi * state.n**3)


def expectation_p_squared(state: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """⟨p²⟩ = (Zαm)²/n², i.e. −2m·E by the virial theorem."""
    c = constants or codata()
    return (state.Z * c.alpha * c.electron_mass) ** 2 / state.n**2


def _ordered_pair(g: BoundState, e: BoundState) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    if g.Z != e.Z:
        raise UnsupportedTransition(f"states belong to different nuclei (Z={g.Z} and Z={e.Z})")
    if abs(g.l - e.l) != 1:
        raise UnsupportedTransition(f"{g.label}-{e.label} is not electric-dipole allowed")
    key = tuple(sorted(((g.n, g.l), (e.n, e.l))))
    if key not in _DIPOLE_TABLE:
        raise UnsupportedTransition(f"no dipole matrix element tabulated for {g.label}-{e.label}")
    return key  # type: ignore[return-value]


def radial_dipole(g: BoundState, e: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """|⟨e, m=0| z |g, m=0⟩| in natural length units."""
    c = constants or codata()
    return _DIPOLE_TABLE[_ordered_pair(g, e)] * _scaled_bohr(g, c)


def dipole_p_squared(g: BoundState, e: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """|⟨p⟩_eg|² = m² ω_R² |⟨e|z|g⟩|² (position form with the exact ω_R)."""
    c = constants or codata()
    omega = transition_frequency(g, e, c)
    return (c.electron_mass * omega * radial_dipole(g, e, c)) ** 2


def decay_rate_from_dipole(omega: float, dipole: float, constants: Optional[PhysicalConstants] = None) -> float:
    """Einstein A coefficient (4/3)·α·ω³·|⟨r⟩|².

    ``dipole`` is the m = 0 element |⟨e,0|z|g,0⟩|.  For a P → S decay the
    sum over the final sublevel of |⟨g|r|e,m⟩|² equals that element
    squared for every m, so no further sublevel average is needed.
    """
    c = constants or codata()
    return 4.0 / 3.0 * c.alpha * omega**3 * dipole**2


def decay_rate(
    g: BoundState,
    e: BoundState,
    constants: Optional[PhysicalConstants] = None,
    measured: Optional[float] = None,
    si: bool = False,
) -> float:
    """Spontaneous decay rate Γ of e → g.

    A ``measured`` value (natural units, or rad/s when ``si`` is set)
    overrides the computed one.
    """
    c = constants or codata()
    if measured is not None:
        return float(measured)
    gamma = decay_rate_from_dipole(transition_frequency(g, e, c), radial_dipole(g, e, c), c)
    return c.energy_to_rad_per_s(gamma) if si else gamma


# ---------------------------------------------------------------------------
# Radial wavefunctions and quadrature oracles


def _radial_polynomial(n: int, l: int) -> np.poly1d:
    """P(x) = (2x/n)^l · L^{2l+1}_{n-l-1}(2x/n), x = r Z/a₀."""
    rho = np.poly1d([2.0 / n, 0.0])
    return genlaguerre(n - l - 1, 2 * l + 1)(rho) * rho**l


def radial_wavefunction(state: BoundState, r, constants: Optional[PhysicalConstants] = None):
    """Normalised radial function R_nl(r), r in natural length units."""
    c = constants or codata()
    a = _scaled_bohr(state, c)
    n, l = state.n, state.l
    norm = math.sqrt(
        (2.0 / (n * a)) ** 3 * math.factorial(n - l - 1) / (2.0 * n * math.factorial(n + l))
    )
    x = np.asarray(r, dtype=float) / a
    return norm * np.exp(-x / n) * _radial_polynomial(n, l)(x)


def _unnormalised(state: BoundState):
    P = _radial_polynomial(state.n, state.l)
    dP = P.deriv()
    n = state.n

    def u(x: float) -> float:
        return math.exp(-x / n) * P(x)

    def du(x: float) -> float:
        return math.exp(-x / n) * (dP(x) - P(x) / n)

    return u, du


def _integrate(func, state: BoundState) -> float:
    upper = QUAD_RANGE * state.n**2
    value, _ = quad(func, 0.0, upper, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return value


def _norm(state: BoundState) -> float:
    u, _ = _unnormalised(state)
    return _integrate(lambda x: (u(x) * x) ** 2, state)


def numeric_contact_density(state: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """|ψ(0)|² from the numerically normalised radial function at r = 0."""
    c = constants or codata()
    u, _ = _unnormalised(state)
    a = _scaled_bohr(state, c)
    return u(0.0) ** 2 / _norm(state) / (4.0 * math.pi) / a**3


def numeric_p_squared(state: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """⟨p²⟩ = ∫ [R'² + l(l+1)R²/r²] r² dr by quadrature."""
    c = constants or codata()
    u, du = _unnormalised(state)
    ll = state.l * (state.l + 1)
    kinetic = _integrate(lambda x: (du(x) * x) ** 2 + ll * u(x) ** 2, state)
    a = _scaled_bohr(state, c)
    return kinetic / _norm(state) / a**2


def numeric_radial_dipole(g: BoundState, e: BoundState, constants: Optional[PhysicalConstants] = None) -> float:
    """|⟨e, m=0| z |g, m=0⟩| by quadrature of r³ R_e R_g times the angular factor."""
    c = constants or codata()
    if g.Z != e.Z or abs(g.l - e.l) != 1:
        raise UnsupportedTransition(f"{g.label}-{e.label} is not electric-dipole allowed")
    lo, hi = (g, e) if g.l < e.l else (e, g)
    u_lo, _ = _unnormalised(lo)
    u_hi, _ = _unnormalised(hi)
    outer = lo if lo.n >= hi.n else hi
    overlap = _integrate(lambda x: u_lo(x) * u_hi(x) * x**3, outer)
    radial = overlap / math.sqrt(_norm(lo) * _norm(hi))
    # ⟨l+1, 0| cos θ |l, 0⟩
    angular = (lo.l + 1) / math.sqrt((2 * lo.l + 1) * (2 * lo.l + 3))
    return abs(radial * angular) * _scaled_bohr(g, c)
