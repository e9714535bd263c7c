"""
Floquet circuit corrupted by static imperfections

Every elementary gate is followed by one application of the error unitary
E = exp(-i H) (unit dwell time per gate). Diagonal gates commute with E, so a run
of r diagonal gates D_1..D_r, each followed by E, collapses into the single
diagonal (D_1 ... D_r) E^r. Only the Hadamards break the runs, so a compiled
period costs about two array operations per Hadamard.

Above MAX_PRECOMPUTED_QUBITS the fused diagonals are not stored; each run is
applied gate by gate followed by E^r, keeping memory at a few length-N arrays.
"""

from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from fractal_fidelity.circuits.floquet_circuit import Circuit
from fractal_fidelity.circuits.gates import (
    Gate,
    Hadamard,
    apply_gate_array,
    apply_hadamard,
    gate_diagonal,
)
from fractal_fidelity.circuits.imperfections import ImperfectionConfig, error_phases
from fractal_fidelity.dynamics.states import MOMENTUM, StateVector
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_PRECOMPUTED_QUBITS = 16

# (hadamard target or None, stored diagonal or None, (diagonal gates, run length))
Segment = Tuple[Optional[int], Optional[np.ndarray], Tuple[Tuple[Gate, ...], int]]


class NoisyFloquetOperator:
    """Compiled noisy period: alternating Hadamards and fused diagonals"""

    def __init__(
        self, circuit: Circuit, config: ImperfectionConfig, precompute: Optional[bool] = None
    ):
        n_q = circuit.params.n_q
        if config.n_q != n_q:
            raise ValueError(f"Imperfections for {config.n_q} qubits, circuit has {n_q}")
        self.circuit = circuit
        self.config = config
        self.n_q = n_q
        self.precomputed = n_q <= MAX_PRECOMPUTED_QUBITS if precompute is None else precompute
        self.phases = error_phases(config)
        self.segments = self._compile()
        logger.debug(
            f"Compiled {circuit.gate_count} gates into {len(self.segments)} segments "
            f"(n_q={n_q}, precomputed={self.precomputed})"
        )

    def _diagonal_segment(self, gates: List[Gate], run: int) -> Segment:
        if not self.precomputed:
            return (None, None, (tuple(gates), run))
        product = np.exp(1j * run * self.phases)
        for gate in gates:
            product *= gate_diagonal(gate, self.n_q)
        return (None, product, ((), run))

    def _compile(self) -> List[Segment]:
        segments: List[Segment] = []
        pending: List[Gate] = []
        run = 0
        for gate in self.circuit.gates:
            if isinstance(gate, Hadamard):
                if run:
                    segments.append(self._diagonal_segment(pending, run))
                segments.append((gate.target, None, ((), 0)))
                # the Hadamard's own error application opens the next run
                pending, run = [], 1
            else:
                pending.append(gate)
                run += 1
        if run:
            segments.append(self._diagonal_segment(pending, run))
        return segments

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        for target, diagonal, (gates, run) in self.segments:
            if target is not None:
                amplitudes = apply_hadamard(amplitudes, target)
            elif diagonal is not None:
                amplitudes = amplitudes * diagonal
            else:
                for gate in gates:
                    amplitudes = apply_gate_array(amplitudes, gate, self.n_q)
                amplitudes = amplitudes * np.exp(1j * run * self.phases)
        return amplitudes


@lru_cache(maxsize=4)
def compile_noisy(circuit: Circuit, config: ImperfectionConfig) -> NoisyFloquetOperator:
    return NoisyFloquetOperator(circuit, config)


def literal_noisy_period(amplitudes: np.ndarray, circuit: Circuit, error: np.ndarray) -> np.ndarray:
    """Gate by gate: apply_gate, then one error application"""
    n_q = circuit.params.n_q
    for gate in circuit.gates:
        amplitudes = apply_gate_array(amplitudes, gate, n_q) * error
    return amplitudes


def noisy_step(
    state: StateVector, circuit: Circuit, config: ImperfectionConfig, fused: bool = True
) -> StateVector:
    """
    One noisy Floquet period

    Args:
        state: Unit-norm momentum-representation state
        circuit: Floquet circuit
        config: Static imperfections
        fused: Use the compiled operator; False walks the gate list literally

    Returns:
        New StateVector in the momentum representation
    """
    if state.representation != MOMENTUM:
        raise ValueError("noisy_step expects a momentum-representation state")
    if state.dimension != circuit.params.N:
        raise ValueError(f"State dimension {state.dimension} does not match N={circuit.params.N}")
    if fused:
        amplitudes = compile_noisy(circuit, config).apply(state.amplitudes)
    else:
        error = np.exp(1j * error_phases(config))
        amplitudes = literal_noisy_period(state.amplitudes, circuit, error)
    return StateVector(amplitudes, MOMENTUM)


class NoisyPropagator:
    """Stateful stepping of the noisy circuit, used by the fidelity engine's inner loop"""

    def __init__(self, circuit: Circuit, config: ImperfectionConfig, state: StateVector):
        self.operator = compile_noisy(circuit, config)
        self.amplitudes = state.amplitudes.copy()

    def step(self) -> np.ndarray:
        self.amplitudes = self.operator.apply(self.amplitudes)
        return self.amplitudes

    def state(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), MOMENTUM)
