"""Independent dense-matrix references, built without the package's FFT or gate kernels"""

from functools import reduce

import numpy as np

from fractal_fidelity.circuits.gates import ControlledPhase, GlobalPhase, Hadamard, SinglePhase

H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
I2 = np.eye(2)


def dft_matrix(N: int) -> np.ndarray:
    """A[j, m] = N^-1/2 exp(i (m - N/2) theta_j): momentum -> angle amplitudes"""
    theta = 2.0 * np.pi * np.arange(N) / N
    n = np.arange(N) - N / 2
    return np.exp(1j * np.outer(theta, n)) / np.sqrt(N)


def dense_floquet(params) -> np.ndarray:
    """U = diag(free) A^dagger diag(kick) A"""
    N = params.N
    theta = 2.0 * np.pi * np.arange(N) / N
    n = np.arange(N) - N / 2
    A = dft_matrix(N)
    kick = np.diag(np.exp(0.5j * params.k * (theta - np.pi) ** 2))
    free = np.diag(np.exp(-0.5j * params.T * n**2))
    return free @ A.conj().T @ kick @ A


def single_qubit(op: np.ndarray, target: int, n_q: int) -> np.ndarray:
    """op on qubit target, qubit q = bit q of the index: kron(op_{n-1}, ..., op_0)"""
    factors = [op if q == target else I2 for q in range(n_q - 1, -1, -1)]
    return reduce(np.kron, factors)


def projector_one(qubit: int, n_q: int) -> np.ndarray:
    return single_qubit(np.diag([0.0, 1.0]), qubit, n_q)


def gate_matrix(gate, n_q: int) -> np.ndarray:
    N = 2**n_q
    if isinstance(gate, Hadamard):
        return single_qubit(H, gate.target, n_q)
    if isinstance(gate, SinglePhase):
        return single_qubit(np.diag([1.0, np.exp(1j * gate.angle)]), gate.target, n_q)
    if isinstance(gate, ControlledPhase):
        both = projector_one(gate.control, n_q) @ projector_one(gate.target, n_q)
        return np.eye(N) + (np.exp(1j * gate.angle) - 1.0) * both
    if isinstance(gate, GlobalPhase):
        return np.exp(1j * gate.angle) * np.eye(N)
    raise TypeError(gate)


def error_matrix(deltas) -> np.ndarray:
    """exp(-i delta_{n-1} sigma_z) x ... x exp(-i delta_0 sigma_z)"""
    factors = [np.diag([np.exp(-1j * d), np.exp(1j * d)]) for d in reversed(list(deltas))]
    return reduce(np.kron, factors)


def dense_noisy_period(circuit, deltas) -> np.ndarray:
    n_q = circuit.params.n_q
    E = error_matrix(deltas)
    U = np.eye(2**n_q, dtype=complex)
    for gate in circuit.gates:
        U = E @ gate_matrix(gate, n_q) @ U
    return U


def periodized_gaussian(N: int, theta0: float, n0: float, sigma: float, images: int = 1):
    n = np.arange(N) - N / 2
    psi = np.zeros(N, dtype=complex)
    for m in range(N):
        total = 0.0
        for p in range(-images, images + 1):
            total += np.exp(-((n[m] + p * N - n0) ** 2) / (4.0 * sigma**2))
        psi[m] = total * np.exp(-1j * n[m] * theta0)
    return psi / np.linalg.norm(psi)
