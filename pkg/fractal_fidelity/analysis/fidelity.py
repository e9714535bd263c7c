"""Fidelity between exact and imperfect evolutions, and its saturation transient"""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from fractal_fidelity.circuits.floquet_circuit import Circuit, build_floquet_circuit
from fractal_fidelity.circuits.imperfections import ImperfectionConfig
from fractal_fidelity.circuits.noisy import NoisyPropagator
from fractal_fidelity.dynamics.floquet import ExactPropagator
from fractal_fidelity.dynamics.sawtooth import MapParams
from fractal_fidelity.dynamics.states import InitialCondition, prepare_initial_state
from fractal_fidelity.utils.errors import SignalTooShortError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_CONFIRMATION_WINDOW = 100
DEFAULT_BAND_SIGMAS = 2.0
MIN_TRANSIENT_LENGTH = 100
_BAND_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class FidelitySeries:
    """F(t) = |<psi_eps(t)|psi(t)>|^2 for t = 0..t_max, one sample per Floquet step"""

    params: MapParams
    config: ImperfectionConfig
    initial: InitialCondition
    values: np.ndarray
    gate_count: int = 0
    circuit_metadata: Optional[Dict[str, Any]] = None
    t_star: Optional[int] = None
    saturated: Optional[bool] = None

    @property
    def t_max(self) -> int:
        return len(self.values) - 1

    def with_transient(self, transient: "TransientResult") -> "FidelitySeries":
        return replace(self, t_star=transient.t_star, saturated=transient.saturated)

    def metadata(self) -> Dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "imperfections": self.config.metadata(),
            "initial": self.initial.to_dict(),
            "t_max": self.t_max,
            "gate_count": self.gate_count,
            "circuit": self.circuit_metadata or {},
            "t_star": self.t_star,
            "saturated": self.saturated,
        }


@dataclass(frozen=True)
class TransientResult:
    """t* and the saturation band it was measured against"""

    t_star: Optional[int]
    saturated: bool
    mean: float
    std: float
    window: int
    source: str = "band"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_star": self.t_star,
            "saturated": self.saturated,
            "saturation_mean": self.mean,
            "saturation_std": self.std,
            "confirmation_window": self.window,
            "source": self.source,
            "flag": None if self.saturated else "no saturation detected",
        }


def compute_fidelity_series(
    params: MapParams,
    config: ImperfectionConfig,
    initial: InitialCondition,
    t_max: int,
    circuit: Optional[Circuit] = None,
) -> FidelitySeries:
    """
    Evolve one initial state exactly and through the imperfect circuit, recording F(t)

    Args:
        params: Map parameters
        config: Static imperfections of the simulated hardware
        initial: Initial condition shared by both evolutions
        t_max: Number of Floquet steps
        circuit: Prebuilt circuit for params (built when omitted)

    Returns:
        FidelitySeries with t_max + 1 samples, F(0) = 1
    """
    if t_max < 1:
        raise ValueError(f"t_max must be at least 1, got {t_max}")
    circuit = circuit or build_floquet_circuit(params)
    psi0 = prepare_initial_state(params, initial)

    exact = ExactPropagator(params, psi0)
    noisy = NoisyPropagator(circuit, config, psi0)

    values = np.empty(t_max + 1, dtype=np.float64)
    values[0] = 1.0
    for t in range(1, t_max + 1):
        overlap = np.vdot(noisy.step(), exact.step())
        values[t] = overlap.real * overlap.real + overlap.imag * overlap.imag

    logger.debug(
        f"Fidelity series n_q={params.n_q} K={params.K} eps={config.epsilon} "
        f"t_max={t_max} F(t_max)={values[-1]:.6g}"
    )
    return FidelitySeries(
        params=params,
        config=config,
        initial=initial,
        values=values,
        gate_count=circuit.gate_count,
        circuit_metadata=circuit.metadata(),
    )


def detect_transient(
    series: Union[FidelitySeries, np.ndarray],
    window: int = DEFAULT_CONFIRMATION_WINDOW,
    n_sigma: float = DEFAULT_BAND_SIGMAS,
    override: Optional[int] = None,
) -> TransientResult:
    """
    Locate the end of the initial fidelity decay

    t* is the first step from which F stays, for `window` consecutive steps, inside
    mean +/- n_sigma * std of the final half of the series.

    Args:
        series: FidelitySeries or raw values
        window: Confirmation window length
        n_sigma: Band half-width in standard deviations
        override: User-supplied t*, returned as is

    Returns:
        TransientResult; saturated=False when no step qualifies
    """
    values = series.values if isinstance(series, FidelitySeries) else np.asarray(series, float)
    if len(values) < MIN_TRANSIENT_LENGTH:
        raise SignalTooShortError(
            f"Transient detection needs at least {MIN_TRANSIENT_LENGTH} samples, got {len(values)}"
        )

    tail = values[len(values) // 2 :]
    mean, std = float(np.mean(tail)), float(np.std(tail))

    if override is not None:
        if not 0 <= override < len(values):
            raise ValueError(f"t* override {override} outside the series")
        return TransientResult(int(override), True, mean, std, window, source="override")

    inside = np.abs(values - mean) <= n_sigma * std + _BAND_FLOOR
    width = min(window, len(values))
    counts = np.concatenate(([0], np.cumsum(inside, dtype=np.int64)))
    full = np.flatnonzero(counts[width:] - counts[:-width] == width)
    if full.size == 0:
        logger.warning("No saturation detected: F(t) never settles inside the tail band")
        return TransientResult(None, False, mean, std, window)
    return TransientResult(int(full[0]), True, mean, std, window)


def fluctuation_segment(values: np.ndarray, transient: TransientResult) -> np.ndarray:
    """Post-t* samples; the last half of the series when saturation was not detected"""
    start = transient.t_star if transient.saturated else len(values) // 2
    return np.asarray(values[start:], dtype=np.float64)


def fluctuation_histogram(
    segment: np.ndarray, bins: int = 50, value_range: Optional[Tuple[float, float]] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Distribution P(dF) of one-step fluctuations dF = F(t+1) - F(t)

    Returns:
        (bin edges, probability densities)
    """
    increments = np.diff(np.asarray(segment, dtype=np.float64))
    density, edges = np.histogram(increments, bins=bins, range=value_range, density=True)
    return edges, density


def overlap_coefficient(segment_a: np.ndarray, segment_b: np.ndarray, bins: int = 50) -> float:
    """Shared area sum(min(p_a, p_b) * width) of two fluctuation distributions on common bins"""
    increments = np.concatenate((np.diff(segment_a), np.diff(segment_b)))
    lo, hi = float(increments.min()), float(increments.max())
    if hi <= lo:
        return 1.0
    edges_a, density_a = fluctuation_histogram(segment_a, bins, (lo, hi))
    _, density_b = fluctuation_histogram(segment_b, bins, (lo, hi))
    return float(np.sum(np.minimum(density_a, density_b) * np.diff(edges_a)))
