"""Utility decorators for verification checks and other cross-cutting concerns."""

import functools
import logging
import math
from typing import Callable, Any, Dict

from .errors import NumericalError

logger = logging.getLogger(__name__)


def verification_check(func: Callable[..., float]) -> Callable[..., Dict[str, Any]]:
    """
    Decorator turning a residual computation into a check report.

    The decorated function must:
    1. Accept a ``tolerance`` keyword argument
    2. Return a non-negative residual that passes when it is at most ``tolerance``

    The wrapper returns ``{"pass": bool, "residual": float, "tolerance": float}``.
    Numerical failures inside the check are reported as a failed check with
    the error message attached rather than raised; validation errors propagate.

    Example:
        @verification_check
        def duality(problem, tolerance):
            return duality_check(problem)
    """
    @functools.wraps(func)
    def wrapper(*args, tolerance: float, **kwargs) -> Dict[str, Any]:
        try:
            residual = float(func(*args, tolerance=tolerance, **kwargs))
        except NumericalError as e:
            logger.error(f"Check {func.__name__} failed: {e}")
            return {'pass': False, 'residual': None, 'tolerance': tolerance, 'error': str(e)}
        passed = math.isfinite(residual) and residual <= tolerance
        if passed:
            logger.debug(f"Check {func.__name__} passed (residual {residual:.3e} ≤ {tolerance:.1e})")
        else:
            logger.error(f"Check {func.__name__} failed (residual {residual:.3e} > {tolerance:.1e})")
        return {'pass': passed, 'residual': residual, 'tolerance': tolerance}
    return wrapper

