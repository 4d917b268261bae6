"""
Lazy cache of traced curves so region classification and sweeps trace each
Gamma_A only once per process.
"""
import logging
from threading import Lock
from typing import Dict, Optional, Tuple

from .curve_geometry import DEFAULT_POINTS, DEFAULT_TOL, CurvePolyline, trace_gamma

logger = logging.getLogger(__name__)


class LazyCurveManager:
    """
    Traces Gamma_A on first request for a given (A, npts, tol) and keeps the
    polyline for later queries.
    """

    def __init__(self):
        self._curves: Dict[Tuple[float, int, float], CurvePolyline] = {}
        self._lock = Lock()

    def get_curve(self, A: float, npts: int = DEFAULT_POINTS, tol: float = DEFAULT_TOL) -> CurvePolyline:
        key = (float(A), int(npts), float(tol))
        if key not in self._curves:
            with self._lock:
                if key not in self._curves:
                    logger.info(f"Lazy tracing Gamma_A (A={A}, points={npts}, tol={tol})...")
                    try:
                        self._curves[key] = trace_gamma(A, npts, tol)
                    except Exception as e:
                        logger.error(f"Failed to trace Gamma_A for A={A}: {e}")
                        raise
        return self._curves[key]

    def is_cached(self, A: float, npts: int = DEFAULT_POINTS, tol: float = DEFAULT_TOL) -> bool:
        return (float(A), int(npts), float(tol)) in self._curves

    def clear(self) -> None:
        with self._lock:
            self._curves.clear()
        logger.info("Curve cache cleared")


_curve_manager: Optional[LazyCurveManager] = None
_manager_lock = Lock()


def get_curve_manager() -> LazyCurveManager:
    global _curve_manager
    if _curve_manager is None:
        with _manager_lock:
            if _curve_manager is None:
                _curve_manager = LazyCurveManager()
    return _curve_manager
