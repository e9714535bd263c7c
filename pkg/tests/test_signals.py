"""Synthetic signals and estimator calibration"""

import math

import numpy as np
import pytest

from fractal_fidelity.analysis.box_counting import square_box_count
from fractal_fidelity.analysis.dimension import analyze_segment
from fractal_fidelity.analysis.fitting import fit_dimension
from fractal_fidelity.analysis.signals import (
    detrend_exponential,
    synth_signal,
    weierstrass_dimension,
    weierstrass_step,
)
from fractal_fidelity.utils.errors import InvalidConfigError

LENGTH = 2**16
WEIERSTRASS_WINDOW = (2, 2048)


def test_line_and_sinusoid_samples():
    np.testing.assert_array_equal(synth_signal("line", 1024)[:4], [0.0, 1.0, 2.0, 3.0])
    np.testing.assert_array_equal(synth_signal("line", 1024, slope=2.0)[:3], [0.0, 2.0, 4.0])
    sinusoid = synth_signal("sinusoid", 1024, period=4.0, amplitude=3.0)
    assert sinusoid[1] == pytest.approx(3.0)
    assert sinusoid[2] == pytest.approx(0.0, abs=1e-12)


def test_weierstrass_starts_at_its_geometric_sum():
    signal = synth_signal("weierstrass", 1024, a=0.5, b=3.0)
    assert signal[0] == pytest.approx(2.0, abs=1e-11)
    assert np.all(np.abs(signal) <= 2.0 + 1e-12)


def test_weierstrass_helpers():
    assert weierstrass_dimension(0.5, 3.0) == pytest.approx(2 + math.log(0.5) / math.log(3.0))
    assert weierstrass_step(LENGTH, 3.0) == pytest.approx(3.0**-9)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "line", "length": 1000},
        {"kind": "noise", "length": 2048},
        {"kind": "weierstrass", "length": 2048, "a": 1.5},
        {"kind": "weierstrass", "length": 2048, "b": 1.0},
        {"kind": "sinusoid", "length": 2048, "period": 0.0},
    ],
)
def test_invalid_signals(kwargs):
    with pytest.raises(InvalidConfigError):
        synth_signal(**kwargs)


def test_line_has_dimension_one():
    _, window, fit, flags = analyze_segment(synth_signal("line", LENGTH + 1))
    assert 0.95 <= fit.D <= 1.05
    assert window.source == "auto"
    assert flags == []


def test_fit_quality_does_not_drop_as_the_series_grows():
    r2 = [analyze_segment(synth_signal("line", 2**k + 1))[2].r2 for k in range(10, 17)]
    assert np.all(np.diff(r2) >= -1e-9)
    assert min(r2) >= 0.99


def test_sinusoid_has_dimension_two():
    signal = synth_signal("sinusoid", LENGTH, period=10.0)
    _, _, fit, _ = analyze_segment(signal, window=(64, 8192))
    assert 1.9 <= fit.D <= 2.05


@pytest.mark.parametrize("a, b", [(0.5, 3.0), (0.7, 5.0), (0.5, 5.0)])
def test_weierstrass_dimension_is_recovered(a, b):
    signal = synth_signal("weierstrass", LENGTH, a=a, b=b)
    _, _, fit, _ = analyze_segment(signal, window=WEIERSTRASS_WINDOW)
    assert abs(fit.D - weierstrass_dimension(a, b)) <= 0.1


def test_square_grid_counter_agrees_with_modified_counter():
    signal = synth_signal("weierstrass", LENGTH, a=0.5, b=3.0)
    table, _, modified, _ = analyze_segment(signal, window=WEIERSTRASS_WINDOW)
    square = fit_dimension(square_box_count(signal, table.L), (2, 512))
    assert abs(square.D - modified.D) < 0.1


def test_detrend_removes_exponential_decay():
    t = np.arange(1024, dtype=float)
    residual = detrend_exponential(0.2 + 0.8 * np.exp(-t / 50.0))
    assert np.max(np.abs(residual)) < 1e-6
