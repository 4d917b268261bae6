from .curve_geometry import (
    CurvePolyline,
    gamma_function,
    gamma_residual,
    solve_zA,
    trace_gamma,
    distance_to_Yset,
)
from .lazy_curve import LazyCurveManager, get_curve_manager

__all__ = [
    "CurvePolyline",
    "gamma_function",
    "gamma_residual",
    "solve_zA",
    "trace_gamma",
    "distance_to_Yset",
    "LazyCurveManager",
    "get_curve_manager",
]
