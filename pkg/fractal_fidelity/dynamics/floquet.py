"""
Exact Floquet evolution of the quantum sawtooth map

One period is U = exp(-i T n^2 / 2) exp(i k (theta - pi)^2 / 2): the kick acts in
the angle representation, the free rotation in the momentum representation, and
the two are connected by the unitary DFT pair

    psi(theta_j) = N^-1/2 sum_m psi(m) exp(+i n theta_j),   n = m - N/2
    psi(m)       = N^-1/2 sum_j psi(theta_j) exp(-i n theta_j)

Since exp(-i (N/2) theta_j) = (-1)^j, both transforms are the orthonormal FFT pair
dressed by a (-1)^j sign on the angle grid.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import fft

from fractal_fidelity.dynamics.sawtooth import MapParams
from fractal_fidelity.dynamics.states import ANGLE, MOMENTUM, StateVector


@lru_cache(maxsize=64)
def _angle_signs(N: int) -> np.ndarray:
    signs = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
    signs.flags.writeable = False
    return signs


@lru_cache(maxsize=4)
def floquet_phases(params: MapParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonal phase factors of one map period

    Returns:
        (kick, free): kick[j] = exp(i k (theta_j - pi)^2 / 2) on the angle grid,
        free[m] = exp(-i T n^2 / 2) with n = m - N/2
    """
    theta = params.angles()
    n = params.momenta()
    kick = np.exp(0.5j * params.k * (theta - np.pi) ** 2)
    free = np.exp(-0.5j * params.T * n**2)
    kick.flags.writeable = False
    free.flags.writeable = False
    return kick, free


def momentum_to_angle(amplitudes: np.ndarray) -> np.ndarray:
    N = amplitudes.shape[0]
    return _angle_signs(N) * fft.ifft(amplitudes, norm="ortho")


def angle_to_momentum(amplitudes: np.ndarray) -> np.ndarray:
    N = amplitudes.shape[0]
    return fft.fft(_angle_signs(N) * amplitudes, norm="ortho")


def to_angle(state: StateVector) -> StateVector:
    if state.representation == ANGLE:
        return state
    return StateVector(momentum_to_angle(state.amplitudes), ANGLE)


def to_momentum(state: StateVector) -> StateVector:
    if state.representation == MOMENTUM:
        return state
    return StateVector(angle_to_momentum(state.amplitudes), MOMENTUM)


def _check_state(state: StateVector, params: MapParams) -> None:
    if state.representation != MOMENTUM:
        raise ValueError("Floquet evolution expects a momentum-representation state")
    if state.dimension != params.N:
        raise ValueError(f"State dimension {state.dimension} does not match N={params.N}")


def _step(amplitudes: np.ndarray, kick: np.ndarray, free: np.ndarray) -> np.ndarray:
    # the (-1)^j signs of the forward and inverse transforms cancel around the diagonal kick
    angle = fft.ifft(amplitudes, norm="ortho")
    angle *= kick
    momentum = fft.fft(angle, norm="ortho")
    momentum *= free
    return momentum


def exact_step(state: StateVector, params: MapParams) -> StateVector:
    """Apply one exact Floquet period: DFT, kick, inverse DFT, free rotation"""
    _check_state(state, params)
    kick, free = floquet_phases(params)
    return StateVector(_step(state.amplitudes, kick, free), MOMENTUM)


def evolve(state: StateVector, params: MapParams, steps: int) -> StateVector:
    """Apply exact_step `steps` times; steps = 0 returns the input unchanged"""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    _check_state(state, params)
    if steps == 0:
        return state
    kick, free = floquet_phases(params)
    amplitudes = state.amplitudes
    for _ in range(steps):
        amplitudes = _step(amplitudes, kick, free)
    return StateVector(amplitudes, MOMENTUM)


class ExactPropagator:
    """Stateful stepping of the exact map, used by the fidelity engine's inner loop"""

    def __init__(self, params: MapParams, state: StateVector):
        _check_state(state, params)
        self.params = params
        self._kick, self._free = floquet_phases(params)
        self.amplitudes = state.amplitudes.copy()

    def step(self) -> np.ndarray:
        self.amplitudes = _step(self.amplitudes, self._kick, self._free)
        return self.amplitudes

    def state(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), MOMENTUM)
