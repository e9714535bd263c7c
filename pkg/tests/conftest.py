"""Shared fixtures"""

import math

import numpy as np
import pytest

from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.dynamics.states import MOMENTUM, StateVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_state(rng):
    def _make(N: int) -> StateVector:
        amplitudes = rng.normal(size=N) + 1j * rng.normal(size=N)
        return StateVector(amplitudes / np.linalg.norm(amplitudes), MOMENTUM)

    return _make


@pytest.fixture
def chaotic_params():
    return build_params(4, math.sqrt(2.0))


@pytest.fixture
def output_dir(tmp_path):
    return tmp_path / "results"
