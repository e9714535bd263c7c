"""
Gate decomposition of one sawtooth Floquet period

    circuit = QFT + kick phases + inverse QFT + free-rotation phases

The QFT is the Hadamard/controlled-phase ladder without the final SWAP layer, so
its output register holds the angle index bit-reversed (qubit q carries bit
n_q - 1 - q). The kick block is written on those relabelled qubits and the inverse
ladder undoes the reversal, so no SWAP gates are needed.

Each diagonal block implements exp(i c (j - N/2)^2) through the binary expansion
j = sum_a j_a 2^a:

    (j - N/2)^2 = sum_a j_a (4^a - N 2^a) + 2 sum_{a<b} j_a j_b 2^(a+b) + N^2/4
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

from fractal_fidelity.circuits.gates import (
    ControlledPhase,
    Gate,
    GlobalPhase,
    Hadamard,
    SinglePhase,
)
from fractal_fidelity.dynamics.sawtooth import MapParams

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list for one map period"""

    gates: Tuple[Gate, ...]
    params: MapParams
    # Constant phase of the diagonal blocks; carried here when GlobalPhase gates are dropped
    global_phase: float = 0.0
    includes_global_phase: bool = False

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    def metadata(self) -> Dict[str, Any]:
        return {
            "gate_count": self.gate_count,
            "global_phase": self.global_phase,
            "global_phase_gates": self.includes_global_phase,
            "global_phase_note": (
                "GlobalPhase gates emitted in the gate list"
                if self.includes_global_phase
                else "GlobalPhase gates dropped; constant phase kept in global_phase"
            ),
        }


def expected_gate_count(n_q: int, include_global_phase: bool = False) -> int:
    """Two QFT ladders of n(n+1)/2 gates plus two diagonal blocks of n(n-1)/2 + n gates"""
    count = n_q * (n_q + 1) + n_q * (n_q - 1) + 2 * n_q
    return count + (2 if include_global_phase else 0)


def _wrap(angle: float) -> float:
    return math.remainder(angle, TWO_PI)


def qft_gates(n_q: int) -> List[Gate]:
    """Ladder mapping |m> to N^-1/2 sum_j exp(2*pi*i*m*j/N) |bit-reversed j>"""
    gates: List[Gate] = []
    for target in range(n_q - 1, -1, -1):
        gates.append(Hadamard(target))
        for control in range(target - 1, -1, -1):
            gates.append(ControlledPhase(control, target, TWO_PI / 2 ** (target - control + 1)))
    return gates


def inverse_qft_gates(n_q: int) -> List[Gate]:
    inverse: List[Gate] = []
    for gate in reversed(qft_gates(n_q)):
        if isinstance(gate, ControlledPhase):
            inverse.append(ControlledPhase(gate.control, gate.target, -gate.angle))
        else:
            inverse.append(gate)
    return inverse


def quadratic_phase_gates(
    coefficient: float, n_q: int, qubit_of_bit: Callable[[int], int]
) -> Tuple[List[Gate], float]:
    """
    Gates for the diagonal exp(i * coefficient * (j - N/2)^2)

    Args:
        coefficient: c in exp(i c (j - N/2)^2)
        n_q: Number of qubits
        qubit_of_bit: Physical qubit holding bit a of j

    Returns:
        (gates, constant phase c*N^2/4)
    """
    N = 2**n_q
    gates: List[Gate] = []
    for a in range(n_q):
        for b in range(a + 1, n_q):
            angle = _wrap(2.0 * coefficient * 2 ** (a + b))
            gates.append(ControlledPhase(qubit_of_bit(a), qubit_of_bit(b), angle))
    for a in range(n_q):
        angle = _wrap(coefficient * (4**a - N * 2**a))
        gates.append(SinglePhase(qubit_of_bit(a), angle))
    return gates, coefficient * N * N / 4.0


def build_floquet_circuit(params: MapParams, include_global_phase: bool = False) -> Circuit:
    """
    Decompose one Floquet period into elementary gates

    Args:
        params: Map parameters
        include_global_phase: Emit the two GlobalPhase gates instead of recording the
            constant phase in Circuit.global_phase

    Returns:
        Circuit whose action equals exact_step up to exp(i * global_phase)
    """
    n_q = params.n_q
    kick_coefficient = 0.5 * params.k * (TWO_PI / params.N) ** 2
    free_coefficient = -0.5 * params.T

    kick_gates, kick_constant = quadratic_phase_gates(
        kick_coefficient, n_q, lambda a: n_q - 1 - a
    )
    free_gates, free_constant = quadratic_phase_gates(free_coefficient, n_q, lambda a: a)

    gates: List[Gate] = qft_gates(n_q)
    gates.extend(kick_gates)
    if include_global_phase:
        gates.append(GlobalPhase(_wrap(kick_constant)))
    gates.extend(inverse_qft_gates(n_q))
    gates.extend(free_gates)
    if include_global_phase:
        gates.append(GlobalPhase(_wrap(free_constant)))

    global_phase = 0.0 if include_global_phase else _wrap(kick_constant + free_constant)
    return Circuit(
        gates=tuple(gates),
        params=params,
        global_phase=global_phase,
        includes_global_phase=include_global_phase,
    )


def describe_circuit(circuit: Circuit) -> str:
    """Text dump of the gate list, one gate per line"""
    params = circuit.params
    lines = [
        f"# sawtooth Floquet circuit n_q={params.n_q} N={params.N} K={params.K!r}",
        f"# gates={circuit.gate_count} global_phase={circuit.global_phase:.17g}",
    ]
    lines.extend(gate.describe() for gate in circuit.gates)
    return "\n".join(lines) + "\n"
