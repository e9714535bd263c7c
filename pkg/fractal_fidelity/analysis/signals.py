"""Synthetic curves of known dimension, and exponential detrending"""

import math
from typing import Optional

import numpy as np
from scipy.optimize import curve_fit

from fractal_fidelity.utils.errors import FitError, InvalidConfigError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_SYNTH_LENGTH = 1024
WEIERSTRASS_CUTOFF = 1e-12
SIGNAL_KINDS = ("line", "sinusoid", "weierstrass")


def weierstrass_dimension(a: float, b: float) -> float:
    """Box dimension 2 + ln a / ln b of the Weierstrass graph"""
    return 2.0 + math.log(a) / math.log(b)


def weierstrass_step(length: int, b: float) -> float:
    """Sampling step b**-M with M = floor(log_b(length / 2)): the span covers a base period"""
    return float(b) ** -math.floor(math.log(length / 2.0) / math.log(b))


def _weierstrass(length: int, a: float, b: float, dt: Optional[float]) -> np.ndarray:
    if not 0 < a < 1:
        raise InvalidConfigError(f"Weierstrass amplitude ratio a must lie in (0, 1), got {a}")
    if not b > 1:
        raise InvalidConfigError(f"Weierstrass frequency ratio b must exceed 1, got {b}")
    terms = int(math.floor(math.log(WEIERSTRASS_CUTOFF) / math.log(a))) + 1
    k = np.arange(length, dtype=np.int64)
    signal = np.zeros(length, dtype=np.float64)

    integer_b = float(b).is_integer()
    exponent = math.floor(math.log(length / 2.0) / math.log(b))
    if dt is None and integer_b:
        # t_k = k / b**M: reduce b**n * k modulo 2 * b**M exactly in integers
        base = int(b) ** exponent
        for n in range(terms):
            if n < exponent:
                residue = (k * int(b) ** n) % (2 * base)
                phase = math.pi * residue.astype(np.float64) / base
            else:
                residue = (k * pow(int(b), n - exponent, 2)) % 2
                phase = math.pi * residue.astype(np.float64)
            signal += a**n * np.cos(phase)
        return signal

    step = dt if dt is not None else weierstrass_step(length, b)
    t = k.astype(np.float64) * step
    for n in range(terms):
        signal += a**n * np.cos(np.mod(b**n * math.pi * t, 2.0 * math.pi))
    return signal


def synth_signal(
    kind: str,
    length: int,
    slope: float = 1.0,
    period: float = 10.0,
    amplitude: float = 1.0,
    a: float = 0.5,
    b: float = 3.0,
    dt: Optional[float] = None,
) -> np.ndarray:
    """
    Deterministic validation signal sampled at t = 0, 1, ..., length - 1

    Args:
        kind: "line" (slope * t), "sinusoid" (amplitude * sin(2 pi t / period)) or
            "weierstrass" (sum_n a^n cos(b^n pi t_k), truncated once a^n < 1e-12)
        length: Number of samples, at least 1024
        dt: Weierstrass sampling step; defaults to b**-M (see weierstrass_step)

    Returns:
        Signal array
    """
    if length < MIN_SYNTH_LENGTH:
        raise InvalidConfigError(f"Synthetic signals need at least {MIN_SYNTH_LENGTH} samples")
    t = np.arange(length, dtype=np.float64)
    if kind == "line":
        return slope * t
    if kind == "sinusoid":
        if period <= 0:
            raise InvalidConfigError(f"Sinusoid period must be positive, got {period}")
        return amplitude * np.sin(2.0 * math.pi * t / period)
    if kind == "weierstrass":
        return _weierstrass(length, a, b, dt)
    raise InvalidConfigError(f"Unknown signal kind {kind!r}; expected one of {SIGNAL_KINDS}")


def _decay(t: np.ndarray, offset: float, scale: float, tau: float) -> np.ndarray:
    return offset + scale * np.exp(-t / tau)


def detrend_exponential(signal: np.ndarray) -> np.ndarray:
    """
    Subtract a fitted offset + scale * exp(-t / tau) from the signal

    Used to analyse the early decay of F(t) instead of the post-t* plateau.
    """
    y = np.asarray(signal, dtype=np.float64)
    t = np.arange(len(y), dtype=np.float64)
    guess = (float(y[-1]), float(y[0] - y[-1]), max(len(y) / 10.0, 1.0))
    try:
        coefficients, _ = curve_fit(_decay, t, y, p0=guess, maxfev=20000)
    except (RuntimeError, ValueError) as e:
        logger.warning(f"Exponential detrending failed: {e}")
        raise FitError(f"Exponential detrending failed: {e}") from e
    return y - _decay(t, *coefficients)
