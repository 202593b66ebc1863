import dataclasses
import math

import numpy as np
import pytest

from mollow.dressed import generalized_rabi, mixing_angle
from mollow.errors import DegenerateDrive, ValidationError
from mollow.hydrogen import BoundState, radial_dipole
from mollow.radiative import (
    AtomicTransition,
    approx_dressed_lamb,
    bare_lamb_shift,
    corrected_half_splitting,
    dressed_linear_corrections,
    effective_lamb_potential,
    fully_dressed_shift,
    log_factor,
    radiative_coefficients,
    radiative_corrections,
    radiative_rabi_coefficient,
    resummed_sideband,
    sideband_shift_bare,
    sideband_shift_rabi,
)

from conftest import FIG1_FULL, FIG1_UNCORRECTED


def _random_drives(rng, count=1000):
    Omega = rng.uniform(0.5, 50.0, count)
    return Omega, Omega * rng.uniform(-3.0, 3.0, count)


def test_transition_record(hydrogen, constants):
    assert hydrogen.Z == 1
    assert hydrogen.omega_R == pytest.approx(0.375 * constants.alpha**2)
    assert hydrogen.dipole == pytest.approx(radial_dipole(hydrogen.g, hydrogen.e, constants))
    assert hydrogen.ell == pytest.approx(9.8405, abs=1e-4)
    measured = AtomicTransition.from_states(hydrogen.g, hydrogen.e, constants, Gamma=1e-12)
    assert measured.Gamma == 1e-12


def test_log_factor(constants):
    assert log_factor(1, constants) == pytest.approx(-2.0 * math.log(constants.alpha))
    assert log_factor(2, constants) == pytest.approx(log_factor(1, constants) - 2.0 * math.log(2.0))


def test_effective_potential(hydrogen, constants):
    v_g, v_e = effective_lamb_potential(hydrogen)
    assert v_e == 0.0
    expected = 4.0 * constants.alpha**2 * hydrogen.ell / 3.0 * constants.alpha**3 / math.pi
    assert v_g == pytest.approx(expected, rel=1e-14)


def test_bare_lamb_shift_hydrogen(hydrogen, constants):
    L = bare_lamb_shift(hydrogen)
    assert L < 0
    assert L == pytest.approx(-4.0 / (3.0 * math.pi) * constants.alpha**5 * hydrogen.ell, rel=1e-14)
    hz = abs(constants.energy_to_rad_per_s(L)) / (2.0 * math.pi)
    assert hz == pytest.approx(1.068e10, rel=1e-3)


def test_bare_lamb_shift_vanishes_for_equal_densities(hydrogen):
    assert bare_lamb_shift(dataclasses.replace(hydrogen, delta3_g=0.0)) == 0.0
    assert bare_lamb_shift(dataclasses.replace(hydrogen, delta3_e=hydrogen.delta3_g)) == 0.0


def test_approx_dressed_lamb(hydrogen):
    v_g, v_e = effective_lamb_potential(hydrogen)
    assert approx_dressed_lamb(0.0, hydrogen) == pytest.approx((v_e, v_g))
    plus, minus = approx_dressed_lamb(math.pi / 4, hydrogen)
    assert plus == pytest.approx(0.5 * (v_e + v_g))
    assert minus == pytest.approx(0.5 * (v_e + v_g))
    for theta in np.linspace(0.0, math.pi / 2, 7):
        assert sum(approx_dressed_lamb(theta, hydrogen)) == pytest.approx(v_e + v_g, rel=1e-14)
    with pytest.raises(ValidationError):
        approx_dressed_lamb(2.0, hydrogen)


def test_sideband_shift_bare(fig1):
    assert sideband_shift_bare(3.0, 0.0, 5.0) == (0.0, 0.0)
    plus, minus = sideband_shift_bare(fig1["Omega"], fig1["Delta"], fig1["L_bare"])
    assert plus == pytest.approx(-1.8570, abs=1e-4)
    assert minus == -plus
    with pytest.raises(DegenerateDrive):
        sideband_shift_bare(0.0, 0.0, 1.0)


def test_bare_shift_equals_dressed_lamb_difference(hydrogen, rng):
    """Difference of the dressed-state Lamb shifts reproduces the closed form."""
    L = bare_lamb_shift(hydrogen)
    for Omega, Delta in zip(*_random_drives(rng)):
        plus, minus = approx_dressed_lamb(mixing_angle(Omega, Delta), hydrogen)
        closed, _ = sideband_shift_bare(Omega, Delta, L)
        assert plus - minus == pytest.approx(closed, rel=1e-12, abs=1e-13 * abs(L))


def test_dressed_linear_corrections_resonant(hydrogen):
    C = radiative_rabi_coefficient(hydrogen)
    plus, minus = dressed_linear_corrections(math.pi / 4, 30.0, 0.0, hydrogen)
    assert plus == pytest.approx(-C * 15.0, rel=1e-12)
    assert minus == pytest.approx(C * 15.0, rel=1e-12)
    assert dressed_linear_corrections(math.pi / 4, 0.0, 0.0, hydrogen) == (0.0, 0.0)


def test_dressed_linear_corrections_mirror(hydrogen):
    swapped = dataclasses.replace(hydrogen, p2_g=hydrogen.p2_e, p2_e=hydrogen.p2_g)
    theta, OR, Delta = 0.7, 12.0, -4.0
    plus_swapped, _ = dressed_linear_corrections(theta, OR, Delta, swapped)
    _, minus = dressed_linear_corrections(theta, OR, Delta, hydrogen)
    assert -plus_swapped == pytest.approx(minus, rel=1e-12)


def test_rabi_shift_equals_linear_correction_difference(hydrogen, rng):
    """ΔC₊ − ΔC₋ matches −𝓒Ω²/Ω_R for every drive."""
    C = radiative_rabi_coefficient(hydrogen)
    for Omega, Delta in zip(*_random_drives(rng)):
        OR = generalized_rabi(Omega, Delta)
        plus, minus = dressed_linear_corrections(mixing_angle(Omega, Delta), OR, Delta, hydrogen)
        closed, _ = sideband_shift_rabi(Omega, Delta, C)
        assert plus - minus == pytest.approx(closed, rel=1e-12, abs=1e-13 * C * Omega)


def test_radiative_rabi_coefficient(hydrogen, constants):
    C = radiative_rabi_coefficient(hydrogen)
    assert C == pytest.approx(1.5215e-6, rel=1e-4)
    assert C == pytest.approx(1.25 * constants.alpha**3 * hydrogen.ell / math.pi, rel=1e-14)
    he = AtomicTransition.from_states(BoundState.from_label("1S", 2), BoundState.from_label("2P", 2), constants)
    assert radiative_rabi_coefficient(he) / C == pytest.approx(4.0 * he.ell / hydrogen.ell, rel=1e-12)
    assert radiative_rabi_coefficient(dataclasses.replace(hydrogen, p2_g=0.0, p2_e=0.0)) == 0.0


def test_radiative_coefficients(hydrogen):
    coeffs = radiative_coefficients(hydrogen)
    assert coeffs.ell == hydrogen.ell
    assert coeffs.C == radiative_rabi_coefficient(hydrogen)
    assert coeffs.L_bare == bare_lamb_shift(hydrogen)


def test_sideband_shift_rabi(fig1):
    assert sideband_shift_rabi(0.0, 3.0, 0.5) == (0.0, 0.0)
    plus, minus = sideband_shift_rabi(fig1["Omega"], fig1["Delta"], fig1["C"])
    assert plus == pytest.approx(-0.46424, abs=1e-5)
    assert minus == -plus


def test_resummed_sideband(fig1):
    assert resummed_sideband(100.0, 3.0, 4.0, 0.0, 0.0) == pytest.approx((105.0, 95.0))
    plus, minus = resummed_sideband(0.0, fig1["Omega"], fig1["Delta"], fig1["C"], fig1["L_bare"])
    assert plus == pytest.approx(FIG1_FULL)
    assert plus == pytest.approx(25.0050, abs=1e-4)
    assert minus == -plus
    shifted = generalized_rabi(fig1["Omega"] * (1 - fig1["C"]), fig1["Delta"] - fig1["L_bare"])
    assert corrected_half_splitting(fig1["Omega"], fig1["Delta"], fig1["C"], fig1["L_bare"]) == shifted


def test_fully_dressed_shift(fig1):
    assert fully_dressed_shift(25.0, 10.0, 0.0, 0.0) == (0.0, 0.0)
    plus, minus = fully_dressed_shift(fig1["Omega"], fig1["Delta"], fig1["C"], fig1["L_bare"])
    assert plus == pytest.approx(FIG1_FULL - FIG1_UNCORRECTED)
    assert plus == pytest.approx(-1.9208, abs=1e-4)
    assert minus == -plus


def test_linearisation_is_second_order(fig1):
    """Resummed minus linear shift scales quadratically with the corrections."""
    scales = np.array([0.01, 0.02, 0.04, 0.08, 0.16])
    residual = []
    for s in scales:
        C, L = s * fig1["C"], s * fig1["L_bare"]
        full, _ = fully_dressed_shift(fig1["Omega"], fig1["Delta"], C, L)
        bare, _ = sideband_shift_bare(fig1["Omega"], fig1["Delta"], L)
        rabi, _ = sideband_shift_rabi(fig1["Omega"], fig1["Delta"], C)
        residual.append(abs(full - (bare + rabi)))
    slope = np.polyfit(np.log(scales), np.log(residual), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.1)


def test_radiative_corrections_record(hydrogen, fig1):
    corr = radiative_corrections(fig1["Omega"], fig1["Delta"], fig1["C"], fig1["L_bare"])
    assert corr.dL_app_plus is None and corr.dC_plus is None
    assert corr.dw_plus == pytest.approx(-1.8570, abs=1e-4)
    assert corr.small_dw_plus == pytest.approx(-0.46424, abs=1e-5)
    assert corr.full_plus == pytest.approx(-1.9208, abs=1e-4)
    C, L_nat = radiative_rabi_coefficient(hydrogen), bare_lamb_shift(hydrogen)
    with_tr = radiative_corrections(25.0, 10.0, C, 2.0 * L_nat, tr=hydrogen, to_units=lambda v: 2.0 * v)
    theta = mixing_angle(25.0, 10.0)
    assert with_tr.dL_app_plus == pytest.approx(2.0 * approx_dressed_lamb(theta, hydrogen)[0])
    assert with_tr.dC_plus == pytest.approx(dressed_linear_corrections(theta, generalized_rabi(25.0, 10.0), 10.0, hydrogen)[0])


@pytest.mark.parametrize("C, L_bare", [(0.02, 5.0), (0.0, 5.0), (0.0, 0.0), (1e-3, -2.0)])
def test_dressed_terms_follow_applied_coefficients(hydrogen, C, L_bare):
    corr = radiative_corrections(25.0, 10.0, C, L_bare, tr=hydrogen)
    assert corr.dL_app_plus - corr.dL_app_minus == pytest.approx(corr.dw_plus, rel=1e-12, abs=1e-15)
    assert corr.dC_plus - corr.dC_minus == pytest.approx(corr.small_dw_plus, rel=1e-12, abs=1e-15)


def test_dressed_terms_without_a_bare_shift(hydrogen):
    tr = dataclasses.replace(hydrogen, delta3_g=0.0, delta3_e=0.0)
    corr = radiative_corrections(25.0, 10.0, 0.0, 1.0, tr=tr)
    assert corr.dL_app_plus is None and corr.dL_app_minus is None
    assert corr.dw_plus == pytest.approx(-10.0 / generalized_rabi(25.0, 10.0))
