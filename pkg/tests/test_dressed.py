import math

import numpy as np
import pytest

from mollow.dressed import (
    DriveParameters,
    dress,
    dressed_energies,
    generalized_rabi,
    mixing_angle,
    sideband_frequencies,
)
from mollow.errors import DegenerateDrive, ValidationError


def test_mixing_angle_limits():
    assert mixing_angle(3.0, 0.0) == pytest.approx(math.pi / 4)
    assert mixing_angle(0.0, -2.0) == 0.0
    assert mixing_angle(0.0, 2.0) == pytest.approx(math.pi / 2)
    with pytest.raises(DegenerateDrive):
        mixing_angle(0.0, 0.0)


def test_mixing_angle_branch():
    """sin 2θ = Ω/Ω_R and cos 2θ = −Δ/Ω_R for the illustrative drive."""
    theta = mixing_angle(25.0, 10.0)
    root = math.sqrt(725.0)
    assert math.sin(2 * theta) == pytest.approx(25.0 / root, rel=1e-14)
    assert math.cos(2 * theta) == pytest.approx(-10.0 / root, rel=1e-14)
    assert 0.0 <= theta <= math.pi / 2


def test_mixing_angle_random_range(rng):
    for Omega, Delta in zip(rng.uniform(0, 50, 200), rng.uniform(-50, 50, 200)):
        theta = mixing_angle(Omega, Delta)
        assert 0.0 <= theta <= math.pi / 2
        assert math.tan(2 * theta) == pytest.approx(-Omega / Delta, rel=1e-9)


def test_generalized_rabi():
    assert generalized_rabi(4.0, 0.0) == 4.0
    assert generalized_rabi(0.0, -3.0) == 3.0
    assert generalized_rabi(25.0, 10.0) == pytest.approx(26.9258, abs=1e-4)


def test_dressed_energies():
    e_plus, e_minus = dressed_energies(3, 10.0, 9.0, 2.5)
    assert e_plus - e_minus == pytest.approx(2.5)
    up_plus, up_minus = dressed_energies(4, 10.0, 9.0, 2.5)
    assert up_plus - e_plus == pytest.approx(10.0)
    assert up_minus - e_minus == pytest.approx(10.0)
    same = dressed_energies(0, 10.0, 9.0, 0.0)
    assert same[0] == same[1]
    with pytest.raises(ValidationError):
        dressed_energies(-1, 10.0, 9.0, 2.5)


def test_sideband_frequencies():
    assert sideband_frequencies(7.0, 0.0) == (7.0, 7.0)
    plus, minus = sideband_frequencies(0.0, generalized_rabi(25.0, 10.0))
    assert plus - minus == pytest.approx(2 * math.sqrt(725.0))
    assert plus == pytest.approx(26.9258, abs=1e-4)


def test_dressed_pair_diagonalises_rwa_hamiltonian(rng):
    """Rows of the amplitude matrix are eigenvectors of the RWA Hamiltonian
    in the (|e,n>, |g,n+1>) basis, split by Ω_R."""
    for Omega, Delta in zip(rng.uniform(0.1, 20, 50), rng.uniform(-20, 20, 50)):
        pair = dress(Omega, Delta)
        H = np.array([[-Delta, Omega / 2], [Omega / 2, 0.0]])
        D = pair.amplitudes @ H @ pair.amplitudes.T
        assert abs(D[0, 1]) < 1e-12 * pair.omega_R_gen
        assert D[0, 0] - D[1, 1] == pytest.approx(pair.omega_R_gen, rel=1e-12)


def test_dress_energies():
    pair = dress(25.0, 10.0, n=2, omega_L=100.0, omega_R=90.0)
    assert pair.E_plus - pair.E_minus == pytest.approx(math.sqrt(725.0))
    assert dress(25.0, 10.0).E_plus is None


def test_drive_from_h():
    drive = DriveParameters.from_h(1000.0, 0.5, Delta=2.0)
    assert drive.Omega == 500.0
    assert drive.h == 1000.0
    assert drive.Omega_R == pytest.approx(math.hypot(500.0, 2.0))
    with pytest.raises(ValidationError):
        DriveParameters(Omega=-1.0, Delta=0.0)


def test_drive_consistency():
    drive = DriveParameters(Omega=1.0, Delta=0.5, omega_L=100.5)
    assert drive.consistent_with(100.0)
    assert not drive.consistent_with(99.0)
    assert DriveParameters(Omega=1.0, Delta=0.5).consistent_with(3.0)
