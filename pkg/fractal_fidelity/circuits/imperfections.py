"""Static qubit-level imperfections H = sum_i (Delta + delta_i) sigma_i^z"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from fractal_fidelity.circuits.gates import qubit_bits
from fractal_fidelity.utils.errors import InvalidConfigError

GENERATOR = "numpy.random.Generator(PCG64).uniform(-epsilon, epsilon, n_q)"


@dataclass(frozen=True)
class ImperfectionConfig:
    """Per-qubit detunings drawn once per run and held constant in time"""

    epsilon: float
    seed: int
    deltas: Tuple[float, ...]
    level_spacing: float = 0.0

    @property
    def n_q(self) -> int:
        return len(self.deltas)

    def metadata(self) -> Dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "seed": self.seed,
            "deltas": list(self.deltas),
            "level_spacing": self.level_spacing,
            "level_spacing_note": "Delta = 0 unless set explicitly; a uniform Delta is an error-free rotation",
            "generator": GENERATOR,
        }


def sample_imperfections(
    n_q: int, epsilon: float, seed: int, level_spacing: float = 0.0
) -> ImperfectionConfig:
    """
    Draw n_q detunings i.i.d. uniform on [-epsilon, epsilon]

    Args:
        n_q: Number of qubits
        epsilon: Imperfection strength
        seed: Generator seed; the same seed always yields the same deltas
        level_spacing: Mean level spacing Delta (0 by default)

    Returns:
        ImperfectionConfig
    """
    if not math.isfinite(epsilon) or epsilon < 0:
        raise InvalidConfigError(f"epsilon must be a finite non-negative number, got {epsilon}")
    if n_q < 1:
        raise InvalidConfigError(f"n_q must be positive, got {n_q}")
    if epsilon == 0:
        deltas = (0.0,) * n_q
    else:
        rng = np.random.default_rng(seed)
        deltas = tuple(float(d) for d in rng.uniform(-epsilon, epsilon, n_q))
    return ImperfectionConfig(
        epsilon=float(epsilon), seed=int(seed), deltas=deltas, level_spacing=float(level_spacing)
    )


def error_phases(config: ImperfectionConfig) -> np.ndarray:
    """
    Per-basis-state phase of one unit-time error application

    Returns:
        phi[m] = -sum_i (Delta + delta_i) s_i(m), with s_i = +1 for bit i = 0 and -1 for bit i = 1
    """
    phases = np.zeros(2**config.n_q, dtype=np.float64)
    for q, delta in enumerate(config.deltas):
        spins = 1 - 2 * qubit_bits(config.n_q, q)
        phases -= (delta + config.level_spacing) * spins
    return phases


def error_unitary(config: ImperfectionConfig) -> np.ndarray:
    """Diagonal of exp(-i H) over all 2**n_q basis states"""
    return np.exp(1j * error_phases(config))
