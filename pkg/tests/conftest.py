"""Shared fixtures: CODATA constants, the hydrogen 1S-2P transition and the
illustrative corrected-triplet parameters (Gamma=1, Omega=25, Delta=10,
C=0.02, L_bare=5)."""

import math

import numpy as np
import pytest

from mollow.constants import codata
from mollow.hydrogen import BoundState
from mollow.radiative import AtomicTransition

FIG1 = {"Omega": 25.0, "Delta": 10.0, "Gamma": 1.0, "C": 0.02, "L_bare": 5.0}

#: Sideband half-splittings of the illustrative parameters.
FIG1_UNCORRECTED = math.sqrt(725.0)
FIG1_BARE = math.sqrt(625.0 + 25.0)
FIG1_FULL = math.sqrt(24.5**2 + 25.0)


@pytest.fixture
def constants():
    return codata()


@pytest.fixture
def hydrogen(constants):
    return AtomicTransition.from_states(BoundState.from_label("1S"), BoundState.from_label("2P"), constants)


@pytest.fixture
def fig1():
    return dict(FIG1)


@pytest.fixture
def rng():
    # Fixed seed so randomized property tests are reproducible.
    return np.random.default_rng(20240229)
