"""
The sideways-V curve Gamma_A, its real-axis junction z_A and distances to the
Y-shaped set [-sqrt(n) d, z_A] U Gamma_A.

Gamma_A is the zero set of F(z) = Re G(z) in the left half plane, where
G(z) = 2 S(z) - z Log((z + S(z)) / (z - S(z))) and S = sqrt_quad(-A, .).
G'(z) = -Log((z + S) / (z - S)), so the gradient of F is conj(G'(z)).
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.optimize import bisect, brentq

from ..exceptions import EndpointError, InvalidInputError, SolverError, TraceError
from ..kernels.branch_kernels import sqrt_quad

logger = logging.getLogger(__name__)

DEFAULT_POINTS = 512
DEFAULT_TOL = 1e-10
MAX_BRACKET_DOUBLINGS = 60

# continuation lengths in units of sqrt(A)
START_RADIUS = 1e-3
FINE_STEP = 2e-3
MAX_FINE_STEPS = 200000


@dataclass
class CurvePolyline:
    A: float
    points: np.ndarray
    residuals: np.ndarray
    z_A: float
    tol: float = DEFAULT_TOL
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def endpoints(self):
        top = complex(0.0, 2.0 * math.sqrt(self.A))
        return top, top.conjugate(), complex(self.z_A, 0.0)

    @property
    def upper_arm(self) -> np.ndarray:
        """From 2i sqrt(A) down to z_A."""
        return self.points[: (len(self.points) + 1) // 2]

    def max_residual(self) -> float:
        return float(np.max(self.residuals))

    def to_rows(self) -> List[List[float]]:
        return [[float(p.real), float(p.imag), float(r)] for p, r in zip(self.points, self.residuals)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": self.A,
            "z_A": self.z_A,
            "tol": self.tol,
            "points": [[float(p.real), float(p.imag)] for p in self.points],
            "residuals": [float(r) for r in self.residuals],
        }


def _check_A(A: float) -> float:
    if not A > 0:
        raise InvalidInputError(f"Curve parameter A must be positive, got {A}")
    return float(A)


def gamma_function(A: float, z: complex) -> complex:
    z = complex(z)
    s = sqrt_quad(-A, z)
    return 2.0 * s - z * cmath.log((z + s) / (z - s))


def gamma_derivative(A: float, z: complex) -> complex:
    z = complex(z)
    s = sqrt_quad(-A, z)
    return -cmath.log((z + s) / (z - s))


def gamma_residual(A: float, z: complex) -> float:
    A = _check_A(A)
    z = complex(z)
    top = 2.0 * math.sqrt(A)
    if z == complex(0.0, top) or z == complex(0.0, -top):
        raise EndpointError(f"gamma_residual is not evaluated at the endpoint {z!r}")
    return gamma_function(A, z).real


def solve_zA(A: float, tol: float = DEFAULT_TOL) -> float:
    """Negative real root of the junction equation, by bracketing bisection."""
    A = _check_A(A)
    if not tol > 0:
        raise InvalidInputError(f"Tolerance must be positive, got {tol}")

    def residual(t: float) -> float:
        return gamma_function(A, complex(t, 0.0)).real

    root_a = math.sqrt(A)
    inner, outer = -root_a, -4.0 * root_a
    f_inner = residual(inner)
    doublings = 0
    while np.sign(residual(outer)) == np.sign(f_inner):
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            raise SolverError(f"No sign change bracketing z_A for A={A}")
        outer *= 2.0

    root = bisect(residual, outer, inner, xtol=1e-15 * root_a, rtol=4 * np.finfo(float).eps, maxiter=400)
    if abs(residual(root)) >= tol:
        raise SolverError(f"z_A residual {residual(root)!r} above tolerance {tol}")
    return float(root)


def _correct(A: float, guess: complex, tol: float, maxiter: int = 50) -> complex:
    """Newton iteration on F along its gradient."""
    z = complex(guess)
    for _ in range(maxiter):
        value = gamma_function(A, z).real
        gradient = gamma_derivative(A, z).conjugate()
        if gradient == 0:
            break
        step = value * gradient / (abs(gradient) ** 2)
        z -= step
        if abs(step) < 1e-15 * (1.0 + abs(z)):
            break

    if not abs(gamma_function(A, z).real) < tol:
        raise TraceError(f"Corrector diverged near {guess!r}", last_point=guess)
    return z


def _endpoint_direction(A: float) -> float:
    """Angle at which the left arm leaves 2i sqrt(A)."""
    root_a = math.sqrt(A)
    top = complex(0.0, 2.0 * root_a)
    radius = START_RADIUS * root_a

    def circle_residual(theta: float) -> float:
        return gamma_function(A, top + radius * cmath.exp(1j * theta)).real

    thetas = np.linspace(-math.pi + 1e-3, -math.pi / 2, 65)
    values = [circle_residual(t) for t in thetas]
    for lo, hi, f_lo, f_hi in zip(thetas[:-1], thetas[1:], values[:-1], values[1:]):
        if np.sign(f_lo) != np.sign(f_hi):
            return brentq(circle_residual, lo, hi, xtol=1e-14)
    raise TraceError("No residual sign change on the start circle", last_point=top)


def _continue_arm(A: float, tol: float) -> np.ndarray:
    root_a = math.sqrt(A)
    top = complex(0.0, 2.0 * root_a)
    step = FINE_STEP * root_a

    theta = _endpoint_direction(A)
    first = _correct(A, top + START_RADIUS * root_a * cmath.exp(1j * theta), tol)
    fine = [top, first]

    for _ in range(MAX_FINE_STEPS):
        direction = fine[-1] - fine[-2]
        direction /= abs(direction)
        try:
            point = _correct(A, fine[-1] + step * direction, tol)
        except TraceError as e:
            raise TraceError(f"Trace failed for A={A}: {e}", last_point=fine[-1]) from e

        if point.imag <= 0:
            break
        if abs(point - fine[-1]) > 3.0 * step:
            raise TraceError(f"Continuation jumped from {fine[-1]!r} to {point!r}", last_point=fine[-1])
        fine.append(point)
    else:
        raise TraceError(f"Trace did not reach the real axis for A={A}", last_point=fine[-1])

    logger.debug(f"Continuation for A={A} took {len(fine)} fine steps")
    return np.array(fine, dtype=np.complex128)


def _resample(A: float, fine: np.ndarray, npts: int, tol: float) -> np.ndarray:
    lengths = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(fine)))])
    targets = np.linspace(0.0, lengths[-1], npts)
    points = np.empty(npts, dtype=np.complex128)
    points[0] = fine[0]
    points[-1] = fine[-1]

    for j in range(1, npts - 1):
        idx = min(int(np.searchsorted(lengths, targets[j], side="right")) - 1, len(fine) - 2)
        span = lengths[idx + 1] - lengths[idx]
        t = (targets[j] - lengths[idx]) / span if span > 0 else 0.0
        point = _correct(A, fine[idx] + t * (fine[idx + 1] - fine[idx]), tol)
        # F is even in Im z, keep corrected points on the upper arm
        points[j] = complex(point.real, abs(point.imag))
    return points


def trace_gamma(A: float, npts: int = DEFAULT_POINTS, tol: float = DEFAULT_TOL) -> CurvePolyline:
    """Predictor-corrector trace of Gamma_A, mirrored by conjugation.

    The upper arm has npts points from 2i sqrt(A) to z_A; the returned
    polyline has 2 npts - 1 points ending at -2i sqrt(A).
    """
    A = _check_A(A)
    if npts < 16:
        raise InvalidInputError(f"Need at least 16 points, got {npts}")

    z_a = solve_zA(A, tol=min(tol, 1e-12))
    fine = _continue_arm(A, tol)
    if abs(fine[-1] - z_a) > 10.0 * FINE_STEP * math.sqrt(A):
        raise TraceError(f"Trace ended at {fine[-1]!r}, far from z_A={z_a}", last_point=fine[-1])
    fine = np.append(fine, complex(z_a, 0.0))

    upper = _resample(A, fine, npts, tol)
    # F extends continuously to the endpoints, where it vanishes
    upper_residuals = np.array([abs(gamma_function(A, p).real) for p in upper])

    points = np.concatenate([upper, np.conj(upper[-2::-1])])
    residuals = np.concatenate([upper_residuals, upper_residuals[-2::-1]])

    logger.info(f"Traced Gamma_A for A={A}: {len(points)} points, z_A={z_a!r}, "
                f"max residual {residuals.max():.3e}")
    return CurvePolyline(A=A, points=points, residuals=residuals, z_A=z_a, tol=tol,
                         metadata={"fine_steps": int(len(fine))})


def polyline_distance(z: complex, points: np.ndarray) -> float:
    starts = points[:-1]
    edges = points[1:] - starts
    lengths2 = np.abs(edges) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(lengths2 > 0, ((z - starts) * np.conj(edges)).real / lengths2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(z - (starts + t * edges))))


def segment_distance(z: complex, left: complex, right: complex) -> float:
    return polyline_distance(complex(z), np.array([left, right], dtype=np.complex128))


def distance_to_Yset(A: float, d: float, n: int, z: complex, curve: CurvePolyline) -> float:
    if abs(curve.A - A) > 1e-12 * max(1.0, A):
        raise InvalidInputError(f"Curve traced for A={curve.A}, not A={A}")
    z = complex(z)
    stem = segment_distance(z, complex(-math.sqrt(n) * d, 0.0), complex(curve.z_A, 0.0))
    return min(stem, polyline_distance(z, curve.points))


def curve_normal(A: float, z: complex) -> complex:
    """Unit normal pointing to the side where the residual is negative."""
    gradient = gamma_derivative(A, z).conjugate()
    return -gradient / abs(gradient)


def curve_point_at(curve: CurvePolyline, fraction: float) -> complex:
    """Point of the upper arm at the given fraction of its arclength."""
    arm = curve.upper_arm
    lengths = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(arm)))])
    target = fraction * lengths[-1]
    idx = min(int(np.searchsorted(lengths, target, side="right")) - 1, len(arm) - 2)
    span = lengths[idx + 1] - lengths[idx]
    t = (target - lengths[idx]) / span if span > 0 else 0.0
    return complex(arm[idx] + t * (arm[idx + 1] - arm[idx]))
