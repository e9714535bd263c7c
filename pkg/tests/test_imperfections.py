"""Static imperfection sampling and the error unitary"""

import numpy as np
import pytest

from fractal_fidelity.circuits.imperfections import (
    error_phases,
    error_unitary,
    sample_imperfections,
)
from fractal_fidelity.utils.errors import InvalidConfigError
from tests.oracles import error_matrix


def test_zero_strength_gives_identity():
    config = sample_imperfections(4, 0.0, seed=3)
    assert config.deltas == (0.0,) * 4
    np.testing.assert_array_equal(error_unitary(config), np.ones(16))


def test_same_seed_same_deltas():
    assert sample_imperfections(6, 0.01, 42).deltas == sample_imperfections(6, 0.01, 42).deltas
    assert sample_imperfections(6, 0.01, 42).deltas != sample_imperfections(6, 0.01, 43).deltas


def test_uniform_statistics():
    epsilon = 1e-3
    deltas = np.asarray(sample_imperfections(100_000, epsilon, 11).deltas)
    assert abs(deltas.mean()) < 1e-5
    assert deltas.min() >= -epsilon and deltas.max() <= epsilon
    assert deltas.var() == pytest.approx(epsilon**2 / 3, rel=0.02)


@pytest.mark.parametrize("level_spacing", [0.0, 0.05])
def test_error_unitary_matches_kronecker_oracle(level_spacing):
    config = sample_imperfections(3, 0.2, 5, level_spacing)
    expected = np.diag(error_matrix(np.asarray(config.deltas) + level_spacing))
    np.testing.assert_allclose(error_unitary(config), expected, atol=1e-14)


def test_phase_sign_convention():
    config = sample_imperfections(1, 0.1, 9)
    (delta,) = config.deltas
    np.testing.assert_allclose(error_phases(config), [-delta, delta])


@pytest.mark.parametrize("epsilon", [-1e-3, float("nan")])
def test_invalid_strength(epsilon):
    with pytest.raises(InvalidConfigError):
        sample_imperfections(3, epsilon, 0)


def test_metadata_names_generator():
    meta = sample_imperfections(2, 0.1, 1).metadata()
    assert "PCG64" in meta["generator"]
    assert len(meta["deltas"]) == 2
