"""Fidelity series and fluctuation statistics"""

import math

import numpy as np
import pytest

from fractal_fidelity.analysis.fidelity import (
    compute_fidelity_series,
    fluctuation_histogram,
    overlap_coefficient,
)
from fractal_fidelity.circuits.floquet_circuit import build_floquet_circuit
from fractal_fidelity.circuits.imperfections import sample_imperfections
from fractal_fidelity.circuits.noisy import NoisyPropagator
from fractal_fidelity.dynamics.floquet import ExactPropagator
from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.dynamics.states import (
    BasisStateSpec,
    GaussianPacketSpec,
    gaussian_packet,
    prepare_initial_state,
)
from tests.oracles import dense_floquet, dense_noisy_period


@pytest.mark.parametrize("n_q", range(1, 9))
@pytest.mark.parametrize("K", [-1.0, math.sqrt(2.0)])
def test_perfect_hardware_keeps_unit_fidelity(n_q, K):
    params = build_params(n_q, K)
    series = compute_fidelity_series(
        params, sample_imperfections(n_q, 0.0, 0), BasisStateSpec(0), t_max=100
    )
    assert np.all(np.abs(series.values - 1.0) < 1e-9)


def test_series_starts_at_one_and_stays_in_range():
    params = build_params(6, math.sqrt(2.0))
    series = compute_fidelity_series(
        params, sample_imperfections(6, 0.01, 1), GaussianPacketSpec(1.0, 0.0), t_max=300
    )
    assert len(series.values) == 301
    assert series.t_max == 300
    assert series.values[0] == 1.0
    assert series.values[1] < 1.0
    assert np.all((series.values >= 0.0) & (series.values <= 1.0 + 1e-12))


def test_two_qubit_series_matches_dense_oracle():
    params = build_params(2, math.sqrt(2.0))
    config = sample_imperfections(2, 0.1, seed=123)
    initial = GaussianPacketSpec(1.0, 0.3, sigma_n=1.0)
    series = compute_fidelity_series(params, config, initial, t_max=20)

    U = dense_floquet(params)
    U_noisy = dense_noisy_period(build_floquet_circuit(params), config.deltas)
    psi = psi_noisy = gaussian_packet(params, initial).amplitudes
    expected = [1.0]
    for _ in range(20):
        psi, psi_noisy = U @ psi, U_noisy @ psi_noisy
        expected.append(abs(np.vdot(psi_noisy, psi)) ** 2)
    np.testing.assert_allclose(series.values, expected, atol=1e-10)


def test_fidelity_equals_the_echo_back_to_the_start():
    params = build_params(4, -1.0)
    config = sample_imperfections(4, 0.05, seed=9)
    initial = GaussianPacketSpec(2.0, 1.5)
    series = compute_fidelity_series(params, config, initial, t_max=30)

    U_back = dense_floquet(params).conj().T
    start = prepare_initial_state(params, initial)
    exact = ExactPropagator(params, start)
    noisy = NoisyPropagator(build_floquet_circuit(params), config, start)
    for t in range(1, 31):
        forward, noisy_forward = exact.step(), noisy.step()
        swapped = abs(np.vdot(forward, noisy_forward)) ** 2
        echo = noisy_forward.copy()
        for _ in range(t):
            echo = U_back @ echo
        assert swapped == pytest.approx(series.values[t], abs=1e-12)
        returned = abs(np.vdot(start.amplitudes, echo)) ** 2
        assert returned == pytest.approx(series.values[t], abs=1e-10)


def test_series_is_deterministic():
    params = build_params(5, -1.0)
    config = sample_imperfections(5, 0.05, 77)
    first = compute_fidelity_series(params, config, GaussianPacketSpec(2.0, 3.0), 200)
    second = compute_fidelity_series(params, config, GaussianPacketSpec(2.0, 3.0), 200)
    np.testing.assert_array_equal(first.values, second.values)


def test_series_metadata():
    params = build_params(3, 1.0)
    series = compute_fidelity_series(params, sample_imperfections(3, 0.1, 0), BasisStateSpec(1), 10)
    meta = series.metadata()
    assert meta["gate_count"] == 24
    assert meta["initial"] == {"kind": "basis", "n0": 1}
    assert meta["imperfections"]["epsilon"] == 0.1


def test_t_max_must_be_positive():
    params = build_params(3, 1.0)
    with pytest.raises(ValueError):
        compute_fidelity_series(params, sample_imperfections(3, 0.1, 0), BasisStateSpec(0), 0)


def test_histogram_is_a_density(rng):
    segment = 0.5 + 0.01 * rng.standard_normal(2000)
    edges, density = fluctuation_histogram(segment, bins=20)
    assert len(edges) == 21 and len(density) == 20
    assert float(np.sum(density * np.diff(edges))) == pytest.approx(1.0)


def test_overlap_coefficient(rng):
    a = rng.uniform(size=1000)
    assert overlap_coefficient(a, a) == pytest.approx(1.0)
    assert overlap_coefficient(np.zeros(100), np.zeros(100)) == 1.0
    b = np.cumsum(np.full(1000, 5.0))
    assert overlap_coefficient(np.zeros(1000), b) == pytest.approx(0.0)
