"""
Shared fixtures for unit and integration tests.

Provides the example systems and small helpers used across modules.
"""

import json

import numpy as np
import pytest

from torus_entropy.classes import (
    NormalModeSystem,
    QuarticOscillator,
    ThreeOscillatorParams,
    TwoOscillatorParams,
)
from torus_entropy.models import three_oscillator_system, two_oscillator_system


@pytest.fixture
def three_params():
    """k=1, k12=1, k13=0: frequencies (1, 2, sqrt 2)."""
    return ThreeOscillatorParams(k=1.0, k12=1.0, k13=0.0)


@pytest.fixture
def three_osc(three_params):
    return three_oscillator_system(three_params)


@pytest.fixture
def generic_three_osc():
    """Three oscillators with all couplings switched on."""
    return three_oscillator_system(ThreeOscillatorParams(k=1.3, k12=0.7, k13=0.4))


@pytest.fixture
def two_params():
    return TwoOscillatorParams(A=2.0, B=1.0, C=1.0)


@pytest.fixture
def two_osc(two_params):
    return two_oscillator_system(two_params)


@pytest.fixture
def single_mode():
    """One unit-frequency oscillator."""
    return NormalModeSystem(n_dof=1, frequencies=(1.0,), mode_to_physical=((1.0,),), label="single")


@pytest.fixture
def quartic():
    """m = w0 = 1 quartic oscillator, coupling set per test."""
    return QuarticOscillator(mass=1.0, omega0=1.0, coupling=0.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240101))


@pytest.fixture
def write_config(tmp_path):
    """Write a JSON configuration file and return its path as a string."""
    def _write(payload, name="model.json"):
        path = tmp_path / name
        if isinstance(payload, str):
            path.write_text(payload, encoding="utf-8")
        else:
            path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write

