"""State vectors and initial conditions in the momentum representation"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from fractal_fidelity.dynamics.sawtooth import MapParams
from fractal_fidelity.utils.errors import InvalidConfigError, UnderResolvedPacketError

MOMENTUM = "momentum"
ANGLE = "angle"
NORM_TOLERANCE = 1e-12

# Probability mass a packet must spread over at least MIN_SUPPORT grid points
_RESOLUTION_MASS = 0.99
_MIN_SUPPORT = 3


@dataclass(frozen=True, eq=False)
class StateVector:
    """N complex amplitudes indexed by m = 0..N-1, tagged with their representation"""

    amplitudes: np.ndarray
    representation: str = MOMENTUM

    def __post_init__(self):
        if self.representation not in (MOMENTUM, ANGLE):
            raise ValueError(f"Unknown representation: {self.representation}")

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.shape[0])

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def overlap(self, other: "StateVector") -> complex:
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.amplitudes / math.sqrt(self.norm_squared()), self.representation)


@dataclass(frozen=True)
class GaussianPacketSpec:
    """Gaussian packet centred at (theta0, n0); sigma_n None means minimal uncertainty"""

    theta0: float
    n0: float
    sigma_n: Optional[float] = None

    def width(self, N: int) -> float:
        return self.sigma_n if self.sigma_n is not None else default_sigma(N)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "gaussian", "theta0": self.theta0, "n0": self.n0, "sigma_n": self.sigma_n}


@dataclass(frozen=True)
class BasisStateSpec:
    """Momentum eigenstate |n0> with n0 in the symmetric window"""

    n0: int

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "basis", "n0": self.n0}


InitialCondition = Union[GaussianPacketSpec, BasisStateSpec]


def default_sigma(N: int) -> float:
    """Momentum width sqrt(N/(4*pi)), giving sigma_theta * sigma_n = 1/2 on the N-point torus"""
    return math.sqrt(N / (4.0 * math.pi))


def gaussian_packet(params: MapParams, spec: GaussianPacketSpec, images: int = 1) -> StateVector:
    """
    Build a normalized, periodized Gaussian packet

    Args:
        params: Map parameters (fixes N and the momentum window)
        spec: Packet centre and width
        images: Periodic images summed on each side (2*images + 1 >= 3 terms)

    Returns:
        Unit-norm StateVector in the momentum representation
    """
    sigma = spec.width(params.N)
    if not sigma > 0 or not math.isfinite(sigma):
        raise InvalidConfigError(f"sigma_n must be positive and finite, got {sigma}")
    if not 0.0 <= spec.theta0 < 2.0 * math.pi:
        raise InvalidConfigError(f"theta0 must lie in [0, 2*pi), got {spec.theta0}")
    if not math.isfinite(spec.n0):
        raise InvalidConfigError(f"n0 must be finite, got {spec.n0}")

    n = params.momenta()
    shifts = params.N * np.arange(-max(1, images), max(1, images) + 1, dtype=np.float64)
    envelope = np.exp(-((n[:, None] + shifts[None, :] - spec.n0) ** 2) / (4.0 * sigma**2)).sum(
        axis=1
    )
    amplitudes = envelope * np.exp(-1j * n * spec.theta0)

    norm_sq = float(np.vdot(amplitudes, amplitudes).real)
    if norm_sq == 0.0:
        raise UnderResolvedPacketError("Gaussian packet vanishes on the momentum grid")
    amplitudes = amplitudes / math.sqrt(norm_sq)

    probabilities = np.sort(np.abs(amplitudes) ** 2)[::-1]
    support = int(np.searchsorted(np.cumsum(probabilities), _RESOLUTION_MASS)) + 1
    if support < _MIN_SUPPORT:
        raise UnderResolvedPacketError(
            f"sigma_n={sigma:.3g} puts 99% of the probability on {support} grid point(s); "
            f"at least {_MIN_SUPPORT} are required"
        )

    return StateVector(amplitudes.astype(np.complex128), MOMENTUM)


def momentum_eigenstate(params: MapParams, n0: int) -> StateVector:
    """|n0> for n0 in [-N/2, N/2)"""
    m = int(n0) + params.N // 2
    if int(n0) != n0 or not 0 <= m < params.N:
        raise InvalidConfigError(f"n0={n0} outside the momentum window of N={params.N}")
    amplitudes = np.zeros(params.N, dtype=np.complex128)
    amplitudes[m] = 1.0
    return StateVector(amplitudes, MOMENTUM)


def prepare_initial_state(params: MapParams, initial: InitialCondition) -> StateVector:
    if isinstance(initial, GaussianPacketSpec):
        return gaussian_packet(params, initial)
    if isinstance(initial, BasisStateSpec):
        return momentum_eigenstate(params, initial.n0)
    raise InvalidConfigError(f"Unsupported initial condition: {initial!r}")
