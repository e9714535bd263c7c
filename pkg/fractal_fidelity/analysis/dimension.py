"""End-to-end fractal dimension of a fidelity series or an arbitrary signal"""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from fractal_fidelity.analysis.box_counting import (
    SCALING_CONVENTION,
    BoxCountTable,
    make_ladder,
    modified_box_count,
)
from fractal_fidelity.analysis.fidelity import (
    TransientResult,
    detect_transient,
    fluctuation_segment,
)
from fractal_fidelity.analysis.fitting import (
    BoxCountResult,
    FitWindow,
    auto_fit_window,
    fit_dimension,
    sensitivity_band,
)
from fractal_fidelity.analysis.signals import detrend_exponential
from fractal_fidelity.utils.errors import FitError, SignalTooShortError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

# Shortest segment for which a ladder of at least four box sizes exists
MIN_SEGMENT_LENGTH = 32


@dataclass(frozen=True, eq=False)
class FractalAnalysis:
    """Box-count table, window, fit and the soft flags raised along the way"""

    table: BoxCountTable
    window: FitWindow
    fit: Optional[BoxCountResult]
    segment_start: int
    segment_length: int
    transient: Optional[TransientResult] = None
    detrended: bool = False
    flags: List[str] = field(default_factory=list)

    @property
    def D(self) -> float:
        return self.fit.D if self.fit is not None else math.nan

    def to_dict(self) -> Dict[str, Any]:
        return {
            "D": None if self.fit is None else self.fit.D,
            "fit": None if self.fit is None else self.fit.to_dict(),
            "fit_window": self.window.to_dict(),
            "segment_start": self.segment_start,
            "segment_length": self.segment_length,
            "transient": None if self.transient is None else self.transient.to_dict(),
            "detrended": self.detrended,
            "scaling_convention": SCALING_CONVENTION,
            "flags": list(self.flags),
        }


def _resolve_window(
    table: BoxCountTable,
    override: Optional[Tuple[float, float]],
    epsilon: Optional[float],
    n_q: Optional[int],
) -> FitWindow:
    if override is None:
        return auto_fit_window(table, epsilon=epsilon, n_q=n_q)
    l_min, l_max = float(override[0]), float(override[1])
    if not 1 <= l_min < l_max:
        raise FitError(f"Invalid fit window override ({l_min}, {l_max})")
    degenerate = l_max <= 4 * l_min
    return FitWindow(
        l_min,
        l_max,
        degenerate,
        "window spans less than a factor of 4" if degenerate else None,
        "override",
        epsilon,
        n_q,
    )


def analyze_segment(
    segment: np.ndarray,
    window: Optional[Tuple[float, float]] = None,
    epsilon: Optional[float] = None,
    n_q: Optional[int] = None,
) -> Tuple[BoxCountTable, FitWindow, Optional[BoxCountResult], List[str]]:
    """
    Box-count one segment and fit its dimension

    Args:
        segment: Samples to analyse
        window: (L_min, L_max) override; chosen automatically when omitted
        epsilon, n_q: Recorded with the automatic window

    Returns:
        (table, window, fit or None, flags)
    """
    x = np.asarray(segment, dtype=np.float64)
    if len(x) < MIN_SEGMENT_LENGTH:
        raise SignalTooShortError(
            f"Segment of {len(x)} samples is too short (need {MIN_SEGMENT_LENGTH})"
        )
    flags: List[str] = []

    ladder = make_ladder(len(x))
    table = modified_box_count(x, ladder)
    fit_window = _resolve_window(table, window, epsilon, n_q)

    dense = make_ladder(len(x), fit_window.bounds())
    if len(dense) != len(ladder):
        table = modified_box_count(x, dense)

    if fit_window.degenerate:
        flags.append("degenerate_window")
        return table, fit_window, None, flags

    try:
        result = fit_dimension(table, fit_window.bounds())
    except FitError as e:
        logger.warning(f"Dimension fit failed: {e}")
        flags.append("fit_failed")
        return table, fit_window, None, flags

    result = replace(result, sensitivity=sensitivity_band(table, fit_window.bounds()))
    flags.extend(result.flags())
    return table, fit_window, result, flags


def analyze_series(
    values: np.ndarray,
    window: Optional[Tuple[float, float]] = None,
    t_star: Optional[int] = None,
    detrend: bool = False,
    transient: bool = True,
    epsilon: Optional[float] = None,
    n_q: Optional[int] = None,
) -> FractalAnalysis:
    """
    Transient detection, segment selection, box counting and fit in one call

    Args:
        values: F(t) or any sampled signal
        window: Fit window override
        t_star: Transient override
        detrend: Analyse the whole series after subtracting a fitted exponential decay
        transient: False analyses from t_star (or 0) without transient detection
        epsilon, n_q: Recorded with the automatic window

    Returns:
        FractalAnalysis
    """
    x = np.asarray(values, dtype=np.float64)
    flags: List[str] = []

    result: Optional[TransientResult] = None
    if transient:
        result = detect_transient(x, override=t_star)
        if not result.saturated:
            flags.append("no_saturation_detected")
        start = len(x) - len(fluctuation_segment(x, result))
    else:
        start = int(t_star or 0)

    if detrend:
        segment = detrend_exponential(x)
        start = 0
    else:
        segment = x[start:]

    table, fit_window, fit, fit_flags = analyze_segment(segment, window, epsilon, n_q)
    flags.extend(fit_flags)
    logger.debug(
        f"Fractal analysis: start={start} length={len(segment)} "
        f"window={fit_window.bounds()} D={fit.D if fit else float('nan'):.4f}"
    )
    return FractalAnalysis(
        table=table,
        window=fit_window,
        fit=fit,
        segment_start=start,
        segment_length=len(segment),
        transient=result,
        detrended=detrend,
        flags=flags,
    )
