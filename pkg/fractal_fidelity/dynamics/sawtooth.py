"""Sawtooth map parameters and dynamical-regime classification"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

from fractal_fidelity.utils.errors import InvalidConfigError

MAX_QUBITS = 24
INTEGRABLE_K = (-3.0, -2.0, -1.0, 0.0)
_K_TOL = 1e-12


class Regime(str, Enum):
    CHAOTIC = "chaotic"
    INTEGRABLE = "integrable"
    MIXED = "mixed"


def classify_regime(K: float) -> Regime:
    """Chaotic for K > 0 or K < -4, integrable at K = -3, -2, -1, 0, mixed otherwise"""
    if any(abs(K - k_int) <= _K_TOL for k_int in INTEGRABLE_K):
        return Regime.INTEGRABLE
    if K > 0 or K < -4:
        return Regime.CHAOTIC
    return Regime.MIXED


@dataclass(frozen=True)
class MapParams:
    """Dimensionless sawtooth parameters; N = 2**n_q, T = 2*pi/N, k = K/T"""

    n_q: int
    N: int
    K: float
    T: float
    k: float
    regime: Regime

    def momenta(self) -> np.ndarray:
        """Symmetric momentum window n = m - N/2 for indices m = 0..N-1"""
        return np.arange(self.N, dtype=np.float64) - self.N / 2

    def angles(self) -> np.ndarray:
        """Angle grid theta_j = 2*pi*j/N"""
        return 2.0 * np.pi * np.arange(self.N, dtype=np.float64) / self.N

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_q": self.n_q,
            "N": self.N,
            "K": self.K,
            "T": self.T,
            "k": self.k,
            "regime": self.regime.value,
        }


def build_params(n_q: int, K: float) -> MapParams:
    """
    Build the sawtooth map parameters for a register of n_q qubits

    Args:
        n_q: Number of qubits, 1..24
        K: Classical chaos parameter K = k*T

    Returns:
        MapParams with N = 2**n_q, T = 2*pi/N and k = K/T
    """
    if isinstance(n_q, bool) or int(n_q) != n_q:
        raise InvalidConfigError(f"n_q must be an integer, got {n_q!r}")
    n_q = int(n_q)
    if not 1 <= n_q <= MAX_QUBITS:
        raise InvalidConfigError(f"n_q must lie in [1, {MAX_QUBITS}], got {n_q}")
    K = float(K)
    if not math.isfinite(K):
        raise InvalidConfigError(f"K must be finite, got {K}")

    N = 2**n_q
    T = 2.0 * math.pi / N
    k = K / T
    return MapParams(n_q=n_q, N=N, K=K, T=T, k=k, regime=classify_regime(K))
