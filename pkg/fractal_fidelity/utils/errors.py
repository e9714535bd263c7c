"""Exception types shared across the toolkit"""

from typing import Any, Dict, Optional


class FractalFidelityError(Exception):
    """Base class for toolkit errors"""


class InvalidConfigError(FractalFidelityError, ValueError):
    """Rejected parameters or run configuration (CLI exit code 2)"""


class UnderResolvedPacketError(InvalidConfigError):
    """Gaussian packet narrower than the momentum grid can represent"""


class SignalTooShortError(FractalFidelityError, ValueError):
    """Signal or ladder does not satisfy the box-counting preconditions"""


class JobFailedError(FractalFidelityError):
    """One or more orchestrated jobs failed (CLI exit code 3)"""

    def __init__(self, message: str, result: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.result = result or {}


class FitError(FractalFidelityError, ValueError):
    """Not enough ladder points inside the fit window, or a failed curve fit"""
