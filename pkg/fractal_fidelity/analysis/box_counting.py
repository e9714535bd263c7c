"""
Box counting of sampled planar curves

The curve is (t, x_t) with t in samples. Before counting, x is rescaled by one
global factor so its full excursion spans the full duration (len - 1 steps);
this makes strip width and height commensurate, and only shifts log M.

A strip of width L covers samples iL .. iL + L inclusive (L time intervals, sharing
its boundary sample with the next strip). The final incomplete strip is dropped.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from fractal_fidelity.utils.errors import SignalTooShortError

SCALING_CONVENTION = "x * (len - 1) / (max(x) - min(x)); factor 1 for a flat signal"


@dataclass(frozen=True, eq=False)
class BoxCountTable:
    """(L, M(L)) pairs plus the pre-scaling that produced them"""

    L: np.ndarray
    M: np.ndarray
    scale_factor: float = 1.0
    length: Optional[int] = None
    method: str = "modified"

    def in_window(self, window: Tuple[float, float]) -> np.ndarray:
        return (self.L >= window[0]) & (self.L <= window[1])


def prescale(signal: np.ndarray) -> Tuple[np.ndarray, float]:
    """Map the full excursion of the signal onto its duration"""
    x = np.asarray(signal, dtype=np.float64)
    span = float(x.max() - x.min())
    factor = (len(x) - 1) / span if span > 0 else 1.0
    return (x - x.min()) * factor, factor


def _check(signal: np.ndarray, ladder: List[int]) -> None:
    if len(ladder) == 0:
        raise SignalTooShortError("Box-size ladder is empty")
    if min(ladder) < 1:
        raise SignalTooShortError(f"Box sizes must be >= 1, got {min(ladder)}")
    if len(signal) < 4 * max(ladder):
        raise SignalTooShortError(
            f"Signal of {len(signal)} samples is shorter than 4 * max(L) = {4 * max(ladder)}"
        )


def strip_extrema(x: np.ndarray, L: int) -> Tuple[np.ndarray, np.ndarray]:
    """Per-strip (min, max) over the complete strips of width L"""
    n_strips = (len(x) - 1) // L
    body = x[: n_strips * L].reshape(n_strips, L)
    boundary = x[L : n_strips * L + 1 : L]
    lo = np.minimum(body.min(axis=1), boundary)
    hi = np.maximum(body.max(axis=1), boundary)
    return lo, hi


def modified_box_count(signal: Iterable[float], ladder: Iterable[int]) -> BoxCountTable:
    """
    Modified box counting with L x Delta_i rectangles

    Args:
        signal: Sampled curve, at least 4 * max(ladder) samples
        ladder: Strip widths in samples

    Returns:
        BoxCountTable with M(L) = sum_i Delta_i / L
    """
    x = np.asarray(signal, dtype=np.float64)
    sizes = sorted(int(L) for L in ladder)
    _check(x, sizes)
    scaled, factor = prescale(x)
    M = np.empty(len(sizes), dtype=np.float64)
    for index, L in enumerate(sizes):
        lo, hi = strip_extrema(scaled, L)
        M[index] = float(np.sum(hi - lo)) / L
    return BoxCountTable(np.asarray(sizes, dtype=np.int64), M, factor, len(x), "modified")


def square_box_count(signal: Iterable[float], sizes: Iterable[int]) -> BoxCountTable:
    """
    Standard box counting on an L x L grid laid over the pre-scaled curve

    Each column of width L is covered by the boxes spanned by the curve's extrema in
    that column, so N(L) = sum_columns (floor(max/L) - floor(min/L) + 1).
    """
    x = np.asarray(signal, dtype=np.float64)
    ladder = sorted(int(L) for L in sizes)
    _check(x, ladder)
    scaled, factor = prescale(x)
    counts = np.empty(len(ladder), dtype=np.float64)
    for index, L in enumerate(ladder):
        lo, hi = strip_extrema(scaled, L)
        counts[index] = float(np.sum(np.floor(hi / L) - np.floor(lo / L) + 1))
    return BoxCountTable(np.asarray(ladder, dtype=np.int64), counts, factor, len(x), "square")


def make_ladder(
    length: int, window: Optional[Tuple[float, float]] = None, min_points: int = 8
) -> List[int]:
    """
    Box-size ladder 1, 2, 4, ... up to length/4

    Midpoints 3, 6, 12, ... (x1.5) are added when fewer than min_points powers of two
    fall inside the window.
    """
    top = length // 4
    if top < 1:
        raise SignalTooShortError(f"Signal of {length} samples is too short for box counting")
    ladder = [2**p for p in range(top.bit_length()) if 2**p <= top]
    if window is not None:
        inside = [L for L in ladder if window[0] <= L <= window[1]]
        if len(inside) < min_points:
            midpoints = [3 * 2 ** (p - 1) for p in range(1, top.bit_length() + 1)]
            ladder = sorted(set(ladder) | {L for L in midpoints if L <= top})
    return ladder
