"""Map parameters and regime classification"""

import math

import pytest

from fractal_fidelity.dynamics.sawtooth import MAX_QUBITS, Regime, build_params, classify_regime
from fractal_fidelity.utils.errors import InvalidConfigError


def test_build_params_derives_period_and_kick_strength():
    params = build_params(8, math.sqrt(2.0))
    assert params.N == 256
    assert params.T == pytest.approx(2 * math.pi / 256)
    assert params.k * params.T == pytest.approx(math.sqrt(2.0))
    assert params.regime is Regime.CHAOTIC


def test_momentum_window_is_symmetric():
    params = build_params(3, 1.0)
    assert params.momenta().tolist() == [-4, -3, -2, -1, 0, 1, 2, 3]
    assert params.angles()[2] == pytest.approx(math.pi / 2)


@pytest.mark.parametrize(
    "K, regime",
    [
        (math.sqrt(2.0), Regime.CHAOTIC),
        (-4.5, Regime.CHAOTIC),
        (-1.0, Regime.INTEGRABLE),
        (-3.0, Regime.INTEGRABLE),
        (0.0, Regime.INTEGRABLE),
        (-2.1, Regime.MIXED),
        (-0.5, Regime.MIXED),
    ],
)
def test_classify_regime(K, regime):
    assert classify_regime(K) is regime


@pytest.mark.parametrize("n_q", [0, MAX_QUBITS + 1, 2.5, True])
def test_build_params_rejects_bad_qubit_counts(n_q):
    with pytest.raises(InvalidConfigError):
        build_params(n_q, 1.0)


def test_build_params_rejects_non_finite_K():
    with pytest.raises(InvalidConfigError):
        build_params(4, float("nan"))


def test_to_dict_reports_regime_name():
    assert build_params(2, -1.0).to_dict()["regime"] == "integrable"
