"""Elementary gates against Kronecker-product matrices"""

import numpy as np
import pytest

from fractal_fidelity.circuits.gates import (
    ControlledPhase,
    GlobalPhase,
    Hadamard,
    SinglePhase,
    apply_gate,
    apply_gate_array,
    gate_diagonal,
    qubit_bits,
)
from fractal_fidelity.dynamics.states import MOMENTUM, StateVector
from tests.oracles import gate_matrix

GATES = [
    Hadamard(0),
    Hadamard(1),
    Hadamard(2),
    ControlledPhase(0, 2, 0.7),
    ControlledPhase(2, 1, -1.3),
    SinglePhase(1, 2.1),
    GlobalPhase(0.4),
]


@pytest.mark.parametrize("gate", GATES, ids=lambda g: g.describe())
def test_gate_matches_dense_oracle(gate, random_state):
    psi = random_state(8).amplitudes
    np.testing.assert_allclose(apply_gate_array(psi, gate, 3), gate_matrix(gate, 3) @ psi, atol=1e-12)


def test_hadamard_is_an_involution(random_state):
    psi = random_state(16)
    twice = apply_gate(apply_gate(psi, Hadamard(2)), Hadamard(2))
    np.testing.assert_allclose(twice.amplitudes, psi.amplitudes, atol=1e-12)


def test_controlled_phase_acts_only_when_both_bits_set():
    diagonal = gate_diagonal(ControlledPhase(0, 2, 0.3), 3)
    phased = np.flatnonzero(np.abs(diagonal - 1.0) > 1e-15)
    assert phased.tolist() == [5, 7]
    assert diagonal[5] == pytest.approx(np.exp(0.3j))


def test_qubit_zero_is_the_least_significant_bit():
    assert [int(qubit_bits(3, q)[6]) for q in range(3)] == [0, 1, 1]
    assert qubit_bits(3, 2).tolist() == [0, 0, 0, 0, 1, 1, 1, 1]


def test_out_of_range_qubits_are_rejected(random_state):
    psi = random_state(8).amplitudes
    with pytest.raises(ValueError):
        apply_gate_array(psi, Hadamard(3), 3)
    with pytest.raises(ValueError):
        apply_gate_array(psi, ControlledPhase(1, 1, 0.5), 3)


def test_apply_gate_needs_power_of_two_dimension():
    with pytest.raises(ValueError):
        apply_gate(StateVector(np.ones(6, dtype=complex), MOMENTUM), Hadamard(0))


def test_describe_formats():
    assert Hadamard(2).describe() == "H q2"
    assert ControlledPhase(0, 1, 0.5).describe() == "CPHASE q0 q1 0.5"
    assert SinglePhase(3, -0.25).describe() == "PHASE q3 -0.25"
    assert GlobalPhase(1.0).describe() == "GPHASE 1"
