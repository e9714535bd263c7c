"""Initial conditions"""

import math

import numpy as np
import pytest

from fractal_fidelity.dynamics.floquet import to_angle
from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.dynamics.states import (
    BasisStateSpec,
    GaussianPacketSpec,
    StateVector,
    default_sigma,
    gaussian_packet,
    momentum_eigenstate,
    prepare_initial_state,
)
from fractal_fidelity.utils.errors import InvalidConfigError, UnderResolvedPacketError
from tests.oracles import periodized_gaussian


def test_packet_is_normalized_and_peaks_at_its_momentum():
    params = build_params(8, math.sqrt(2.0))
    psi = gaussian_packet(params, GaussianPacketSpec(math.pi / 2, 0.0))
    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-12)
    assert int(np.argmax(np.abs(psi.amplitudes))) == 128


@pytest.mark.parametrize("theta0", [math.pi / 2, 1.0, 5.0])
def test_packet_peaks_at_its_angle(theta0):
    params = build_params(8, math.sqrt(2.0))
    psi = to_angle(gaussian_packet(params, GaussianPacketSpec(theta0, 12.0)))
    peak = params.angles()[int(np.argmax(np.abs(psi.amplitudes)))]
    assert abs(peak - theta0) <= params.T


def test_packet_matches_direct_summation():
    params = build_params(6, 1.0)
    spec = GaussianPacketSpec(math.pi, 16.0, sigma_n=2.0)
    expected = periodized_gaussian(64, math.pi, 16.0, 2.0)
    np.testing.assert_allclose(gaussian_packet(params, spec).amplitudes, expected, atol=1e-12)


def test_default_width_is_minimal_uncertainty():
    assert default_sigma(256) == pytest.approx(math.sqrt(256 / (4 * math.pi)))
    spec = GaussianPacketSpec(1.0, 0.0)
    assert spec.width(256) == default_sigma(256)


def test_under_resolved_packet_is_rejected():
    params = build_params(6, 1.0)
    with pytest.raises(UnderResolvedPacketError):
        gaussian_packet(params, GaussianPacketSpec(1.0, 0.0, sigma_n=0.1))


@pytest.mark.parametrize(
    "spec",
    [
        GaussianPacketSpec(2 * math.pi, 0.0),
        GaussianPacketSpec(-0.1, 0.0),
        GaussianPacketSpec(1.0, 0.0, sigma_n=-1.0),
        GaussianPacketSpec(1.0, float("inf")),
    ],
)
def test_invalid_packet_parameters(spec):
    with pytest.raises(InvalidConfigError):
        gaussian_packet(build_params(6, 1.0), spec)


def test_momentum_eigenstate():
    params = build_params(4, 1.0)
    psi = momentum_eigenstate(params, -3)
    assert psi.amplitudes[5] == 1.0
    assert psi.norm_squared() == 1.0
    with pytest.raises(InvalidConfigError):
        momentum_eigenstate(params, 8)


def test_prepare_initial_state_dispatches_on_spec():
    params = build_params(5, 1.0)
    basis = prepare_initial_state(params, BasisStateSpec(0))
    assert basis.amplitudes[16] == 1.0
    packet = prepare_initial_state(params, GaussianPacketSpec(1.0, 2.0))
    assert packet.norm_squared() == pytest.approx(1.0)


def test_state_vector_rejects_unknown_representation():
    with pytest.raises(ValueError):
        StateVector(np.ones(2, dtype=complex), "position")
