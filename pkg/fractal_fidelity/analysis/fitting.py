"""Log-log fits of box-counting tables and selection of the scaling window"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import stats

from fractal_fidelity.analysis.box_counting import BoxCountTable
from fractal_fidelity.utils.errors import FitError

MIN_FIT_POINTS = 4
RELIABLE_R2 = 0.9
PLAUSIBLE_RANGE = (0.9, 2.1)
# Local dimension counted as saturated at the area-filling limit D = 2
SATURATION_TOLERANCE = 0.1
SATURATION_RUN = 3
# Rise of the local dimension that ends the small-L plateau
DEPARTURE_RISE = 0.1
DEPARTURE_RUN = 3
MIN_PLATEAU_SPAN = 4


@dataclass(frozen=True)
class FitWindow:
    l_min: float
    l_max: float
    degenerate: bool = False
    reason: Optional[str] = None
    source: str = "auto"
    epsilon: Optional[float] = None
    n_q: Optional[int] = None

    def bounds(self) -> Tuple[float, float]:
        return self.l_min, self.l_max

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l_min": self.l_min,
            "l_max": self.l_max,
            "degenerate": self.degenerate,
            "reason": self.reason,
            "source": self.source,
        }


@dataclass(frozen=True, eq=False)
class BoxCountResult:
    """Fitted dimension D = -d log M / d log L inside the fit window"""

    L_values: np.ndarray
    M_values: np.ndarray
    fit_window: Tuple[float, float]
    D: float
    stderr: float
    r2: float
    points: int
    sensitivity: Optional[Tuple[float, float]] = None

    @property
    def reliable(self) -> bool:
        return self.r2 >= RELIABLE_R2

    @property
    def in_range(self) -> bool:
        return PLAUSIBLE_RANGE[0] <= self.D <= PLAUSIBLE_RANGE[1]

    def flags(self) -> List[str]:
        flags = []
        if not self.reliable:
            flags.append("unreliable_fit")
        if not self.in_range:
            flags.append("dimension_out_of_range")
        return flags

    def to_dict(self) -> Dict[str, Any]:
        return {
            "D": self.D,
            "stderr": self.stderr,
            "r2": self.r2,
            "points": self.points,
            "fit_window": list(self.fit_window),
            "sensitivity_band": list(self.sensitivity) if self.sensitivity else None,
            "reliable": self.reliable,
            "flags": self.flags(),
        }


def fit_dimension(table: BoxCountTable, fit_window: Tuple[float, float]) -> BoxCountResult:
    """
    Least-squares line through (log L, log M) inside the window

    Args:
        table: Box-counting table
        fit_window: Inclusive (L_min, L_max)

    Returns:
        BoxCountResult; r2 < 0.9 is flagged, not raised
    """
    mask = table.in_window(fit_window) & (table.M > 0)
    points = int(mask.sum())
    if points < MIN_FIT_POINTS:
        raise FitError(
            f"Fit window {fit_window} holds {points} usable ladder points, "
            f"at least {MIN_FIT_POINTS} are required"
        )
    fit = stats.linregress(np.log(table.L[mask].astype(float)), np.log(table.M[mask]))
    return BoxCountResult(
        L_values=table.L,
        M_values=table.M,
        fit_window=(float(fit_window[0]), float(fit_window[1])),
        D=float(-fit.slope),
        stderr=float(fit.stderr),
        r2=float(fit.rvalue**2),
        points=points,
    )


def local_slopes(table: BoxCountTable) -> np.ndarray:
    """d log M / d log L between consecutive ladder points (NaN where M <= 0)"""
    with np.errstate(divide="ignore", invalid="ignore"):
        log_m = np.where(table.M > 0, np.log(np.where(table.M > 0, table.M, 1.0)), np.nan)
        return np.diff(log_m) / np.diff(np.log(table.L.astype(float)))


def _departure_point(L: np.ndarray, dimensions: np.ndarray, l_min: float) -> Optional[float]:
    """First ladder point after which the local dimension climbs off its small-L plateau"""
    for i in range(1, len(dimensions) - DEPARTURE_RUN + 1):
        if L[i] <= MIN_PLATEAU_SPAN * l_min:
            continue
        run = dimensions[i - 1 : i + DEPARTURE_RUN]
        if not np.all(np.isfinite(run)) or not np.all(np.diff(run) > 0):
            continue
        if run[-1] - np.median(dimensions[:i]) >= DEPARTURE_RISE:
            return float(L[i])
    return None


def auto_fit_window(
    table: BoxCountTable,
    epsilon: Optional[float] = None,
    n_q: Optional[int] = None,
    series_length: Optional[int] = None,
) -> FitWindow:
    """
    Choose the scaling region L_min < L < L_max of a box-counting table

    L_min is one map period (one sample). L_max is the smallest of
      - series_length / 8,
      - the last ladder point before the local dimension rises toward 2 over three
        consecutive intervals, ending at least 0.1 above its plateau median,
      - the last ladder point before the local slope sits at the area-filling value -2
        for three consecutive intervals.

    Args:
        table: Box-counting table
        epsilon, n_q: Recorded with the window; the plateau is found empirically
        series_length: Defaults to the length of the counted signal

    Returns:
        FitWindow, flagged degenerate when L_max <= 4 * L_min
    """
    if len(table.L) == 0:
        raise FitError("Empty box-counting table")
    L = table.L.astype(float)
    l_min = float(L[L >= 1].min())
    if not np.any(table.M > 0):
        return FitWindow(l_min, l_min, True, "flat signal: no scaling region", "auto", epsilon, n_q)

    length = series_length if series_length is not None else table.length
    cap = length / 8.0 if length is not None else float(L.max())

    slopes = local_slopes(table)
    saturated = slopes <= -2.0 + SATURATION_TOLERANCE
    l_plateau = float(L.max())
    for i in range(len(slopes) - SATURATION_RUN + 1):
        if np.all(saturated[i : i + SATURATION_RUN]):
            l_plateau = float(L[i])
            break
    knee = _departure_point(L, -slopes, l_min)
    if knee is not None:
        l_plateau = min(l_plateau, knee)

    candidates = L[(L <= min(cap, l_plateau)) & (L >= l_min)]
    l_max = float(candidates.max()) if candidates.size else l_min
    if l_max <= 4 * l_min:
        return FitWindow(
            l_min, l_max, True, "window spans less than a factor of 4", "auto", epsilon, n_q
        )
    return FitWindow(l_min, l_max, False, None, "auto", epsilon, n_q)


def sensitivity_band(
    table: BoxCountTable, fit_window: Tuple[float, float]
) -> Optional[Tuple[float, float]]:
    """Range of D over +/-1 ladder-step moves of each window edge"""
    L = table.L.astype(float)
    inside = np.flatnonzero(table.in_window(fit_window))
    if inside.size == 0:
        return None
    lo_index, hi_index = int(inside[0]), int(inside[-1])
    estimates = []
    for d_lo in (-1, 0, 1):
        for d_hi in (-1, 0, 1):
            lo, hi = lo_index + d_lo, hi_index + d_hi
            if lo < 0 or hi >= len(L) or hi - lo + 1 < MIN_FIT_POINTS:
                continue
            try:
                estimates.append(fit_dimension(table, (L[lo], L[hi])).D)
            except FitError:
                continue
    if not estimates:
        return None
    return float(min(estimates)), float(max(estimates))
