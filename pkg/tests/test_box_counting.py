"""Modified and square-grid box counting"""

import numpy as np
import pytest

from fractal_fidelity.analysis.box_counting import (
    make_ladder,
    modified_box_count,
    prescale,
    square_box_count,
    strip_extrema,
)
from fractal_fidelity.utils.errors import SignalTooShortError


def test_line_gives_one_box_column_per_strip():
    ladder = [2**p for p in range(11)]
    table = modified_box_count(np.arange(4097, dtype=float), ladder)
    np.testing.assert_allclose(table.M, 4096.0 / np.asarray(ladder))
    assert table.scale_factor == 1.0
    assert table.length == 4097


def test_strips_share_their_boundary_sample():
    x = np.zeros(17)
    x[4] = 1.0
    lo, hi = strip_extrema(x, 4)
    assert hi.tolist() == [1.0, 1.0, 0.0, 0.0]
    assert lo.tolist() == [0.0, 0.0, 0.0, 0.0]


def test_incomplete_final_strip_is_dropped():
    lo, _ = strip_extrema(np.arange(10, dtype=float), 4)
    assert len(lo) == 2


def test_counts_are_affine_invariant(rng):
    walk = np.cumsum(rng.standard_normal(8192))
    ladder = make_ladder(len(walk))
    a = modified_box_count(walk, ladder)
    b = modified_box_count(3.0 * walk + 7.0, ladder)
    np.testing.assert_allclose(a.M, b.M, rtol=1e-12)


def test_prescale_maps_excursion_onto_duration():
    scaled, factor = prescale(2.0 * np.arange(101))
    assert factor == pytest.approx(0.5)
    assert scaled.min() == 0.0 and scaled.max() == pytest.approx(100.0)
    flat, factor = prescale(np.full(10, 3.0))
    assert factor == 1.0 and not flat.any()


@pytest.mark.parametrize("ladder", [[32], [], [0, 2]])
def test_rejects_unusable_ladders(ladder):
    with pytest.raises(SignalTooShortError):
        modified_box_count(np.arange(100, dtype=float), ladder)


def test_square_grid_count_of_a_line():
    table = square_box_count(np.arange(4097, dtype=float), [4, 16, 64])
    assert table.M.tolist() == [2048.0, 512.0, 128.0]
    assert table.method == "square"


def test_ladder_powers_of_two():
    assert make_ladder(4096) == [2**p for p in range(11)]
    assert make_ladder(4096, window=(1, 1024)) == make_ladder(4096)
    with pytest.raises(SignalTooShortError):
        make_ladder(3)


def test_ladder_gains_midpoints_for_narrow_windows():
    ladder = make_ladder(4096, window=(64, 1024))
    assert 96 in ladder and 768 in ladder
    assert ladder == sorted(ladder)
    assert max(ladder) == 1024
