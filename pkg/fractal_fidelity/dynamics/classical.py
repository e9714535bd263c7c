"""
Classical sawtooth map, used as an independent island/sea oracle

The map is iterated in the scaled momentum I = T*n:

    I'     = I + K (theta - pi)
    theta' = theta + I'   (mod 2*pi)

The quantum torus covers one momentum cell of width 2*pi in I. Orbits in an
integrable island stay bounded in the unwrapped momentum, orbits in the chaotic
sea diffuse across cells.
"""

import math
from typing import Tuple

import numpy as np

TWO_PI = 2.0 * math.pi

# Excursion (in units of the 2*pi cell) beyond which an orbit counts as diffusive
DEFAULT_EXCURSION_CELLS = 3.0
DEFAULT_ORBIT_STEPS = 20000


def classical_orbit(
    K: float, theta0: np.ndarray, I0: np.ndarray, steps: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Iterate the classical map for a batch of initial conditions

    Args:
        K: Chaos parameter
        theta0: Initial angles, any shape
        I0: Initial scaled momenta, same shape as theta0
        steps: Number of map iterations

    Returns:
        (theta, I) arrays of shape (steps + 1, *theta0.shape); I is unwrapped
    """
    theta = np.mod(np.asarray(theta0, dtype=np.float64), TWO_PI)
    momentum = np.asarray(I0, dtype=np.float64).copy()
    thetas = np.empty((steps + 1,) + theta.shape)
    momenta = np.empty((steps + 1,) + theta.shape)
    thetas[0], momenta[0] = theta, momentum
    for t in range(1, steps + 1):
        momentum = momentum + K * (theta - math.pi)
        theta = np.mod(theta + momentum, TWO_PI)
        thetas[t], momenta[t] = theta, momentum
    return thetas, momenta


def momentum_excursion(
    K: float, theta0: np.ndarray, I0: np.ndarray, steps: int = DEFAULT_ORBIT_STEPS
) -> np.ndarray:
    """Largest |I_t - I_0| over the orbit, without storing it"""
    theta = np.mod(np.asarray(theta0, dtype=np.float64), TWO_PI)
    start = np.asarray(I0, dtype=np.float64)
    momentum = start.copy()
    excursion = np.zeros_like(momentum)
    for _ in range(steps):
        momentum = momentum + K * (theta - math.pi)
        theta = np.mod(theta + momentum, TWO_PI)
        np.maximum(excursion, np.abs(momentum - start), out=excursion)
    return excursion


def island_weight(
    K: float,
    theta_center: float,
    n_center: float,
    cell_theta: float,
    cell_n: float,
    N: int,
    samples: int = 5,
    steps: int = DEFAULT_ORBIT_STEPS,
    excursion_cells: float = DEFAULT_EXCURSION_CELLS,
) -> float:
    """
    Fraction of a phase-space cell occupied by bounded (island) classical orbits

    Args:
        K: Chaos parameter
        theta_center, n_center: Cell centre; n in quantum momentum units
        cell_theta, cell_n: Cell extent along theta and n
        N: Hilbert space dimension (sets T = 2*pi/N)
        samples: Orbits seeded per cell side
        steps: Iterations per orbit
        excursion_cells: Bound on the unwrapped excursion, in 2*pi cells

    Returns:
        Island weight in [0, 1]
    """
    T = TWO_PI / N
    offsets = (np.arange(samples) + 0.5) / samples - 0.5
    theta0 = theta_center + cell_theta * offsets
    n0 = n_center + cell_n * offsets
    grid_theta, grid_n = np.meshgrid(theta0, n0, indexing="ij")
    excursion = momentum_excursion(K, grid_theta, T * grid_n, steps)
    return float(np.mean(excursion < excursion_cells * TWO_PI))
