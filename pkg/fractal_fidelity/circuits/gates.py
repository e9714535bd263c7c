"""
Elementary gates and their action on a 2**n_q amplitude array

Qubit q carries bit q of the basis index (qubit 0 is the least significant bit).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from fractal_fidelity.dynamics.states import StateVector

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class Hadamard:
    target: int

    def describe(self) -> str:
        return f"H q{self.target}"


@dataclass(frozen=True)
class ControlledPhase:
    """diag(1, 1, 1, exp(i*angle)) on (control, target)"""

    control: int
    target: int
    angle: float

    def describe(self) -> str:
        return f"CPHASE q{self.control} q{self.target} {self.angle:.17g}"


@dataclass(frozen=True)
class SinglePhase:
    """diag(1, exp(i*angle)) on target"""

    target: int
    angle: float

    def describe(self) -> str:
        return f"PHASE q{self.target} {self.angle:.17g}"


@dataclass(frozen=True)
class GlobalPhase:
    angle: float

    def describe(self) -> str:
        return f"GPHASE {self.angle:.17g}"


Gate = Union[Hadamard, ControlledPhase, SinglePhase, GlobalPhase]
DIAGONAL_GATES = (ControlledPhase, SinglePhase, GlobalPhase)


@lru_cache(maxsize=2)
def basis_indices(n_q: int) -> np.ndarray:
    indices = np.arange(2**n_q, dtype=np.int64)
    indices.flags.writeable = False
    return indices


def qubit_bits(n_q: int, q: int) -> np.ndarray:
    """Bit q of every basis index m = 0 .. 2**n_q - 1"""
    return (basis_indices(n_q) >> q) & 1


def _check_qubits(gate: Gate, n_q: int) -> None:
    for name in ("target", "control"):
        index = getattr(gate, name, None)
        if index is not None and not 0 <= index < n_q:
            raise ValueError(f"{name} qubit {index} out of range for {n_q} qubits")
    if isinstance(gate, ControlledPhase) and gate.control == gate.target:
        raise ValueError("ControlledPhase needs distinct control and target qubits")


def gate_diagonal(gate: Gate, n_q: int) -> np.ndarray:
    """Diagonal of a phase gate over all 2**n_q basis states"""
    _check_qubits(gate, n_q)
    if isinstance(gate, ControlledPhase):
        active = qubit_bits(n_q, gate.control) & qubit_bits(n_q, gate.target)
    elif isinstance(gate, SinglePhase):
        active = qubit_bits(n_q, gate.target)
    elif isinstance(gate, GlobalPhase):
        return np.full(2**n_q, np.exp(1j * gate.angle), dtype=np.complex128)
    else:
        raise TypeError(f"{type(gate).__name__} is not diagonal")
    return np.where(active == 1, np.exp(1j * gate.angle), 1.0 + 0.0j)


def apply_hadamard(amplitudes: np.ndarray, target: int) -> np.ndarray:
    """Hadamard on one qubit in O(N) via a (high, 2, low) reshape"""
    N = amplitudes.shape[0]
    low = 1 << target
    view = amplitudes.reshape(N // (2 * low), 2, low)
    out = np.empty_like(view)
    upper, lower = view[:, 0, :], view[:, 1, :]
    np.add(upper, lower, out=out[:, 0, :])
    np.subtract(upper, lower, out=out[:, 1, :])
    out *= _INV_SQRT2
    return out.reshape(N)


def apply_gate_array(amplitudes: np.ndarray, gate: Gate, n_q: int) -> np.ndarray:
    if isinstance(gate, Hadamard):
        _check_qubits(gate, n_q)
        return apply_hadamard(amplitudes, gate.target)
    return amplitudes * gate_diagonal(gate, n_q)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """
    Apply one elementary gate to the full amplitude array

    Args:
        state: State whose representation the caller tracks through the circuit
        gate: Gate to apply

    Returns:
        New StateVector carrying the same representation tag
    """
    n_q = state.dimension.bit_length() - 1
    if 2**n_q != state.dimension:
        raise ValueError(f"State dimension {state.dimension} is not a power of two")
    return StateVector(apply_gate_array(state.amplitudes, gate, n_q), state.representation)
