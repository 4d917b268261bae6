"""
All n zeros of pi_n by Aberth-Ehrlich simultaneous iteration.

Newton corrections come from the scaled recurrence (value and derivative
share an exponent, so their ratio needs no rescaling). Seeds are the
eigenvalues of the Jacobi matrix, jittered deterministically.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..exceptions import ConvergenceError, InvalidInputError
from ..geometry.curve_geometry import CurvePolyline, distance_to_Yset
from ..recurrence.params import CaseTag, RecurrenceParams
from ..recurrence.recurrence_core import eval_pi_batch

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAXITER = 500
DEFAULT_SEED = 20240611
DEFAULT_ENDPOINT_EXCLUSION = 0.3
CERTIFICATION_THRESHOLD = 1e-6
JITTER = 1e-8


@dataclass
class ZeroSet:
    params: RecurrenceParams
    n: int
    zeros: np.ndarray
    residuals: np.ndarray
    scaled: np.ndarray
    iterations: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if len(self.residuals) else 0.0

    def certified(self, threshold: float = CERTIFICATION_THRESHOLD) -> bool:
        return self.max_residual() < threshold

    def to_rows(self) -> List[List[float]]:
        return [
            [float(z.real), float(z.imag), float(s.real), float(s.imag), float(r)]
            for z, s, r in zip(self.zeros, self.scaled, self.residuals)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "n": self.n,
            "iterations": self.iterations,
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "scaled": [[float(s.real), float(s.imag)] for s in self.scaled],
            "residuals": [float(r) for r in self.residuals],
        }


def _check_degree(n: int) -> int:
    if int(n) != n or n < 1:
        raise InvalidInputError(f"Zero finding needs n >= 1, got {n}")
    return int(n)


def tridiagonal_zeros(params: RecurrenceParams, n: int) -> np.ndarray:
    """Eigenvalues of the n x n Jacobi matrix whose characteristic polynomial is pi_n."""
    n = _check_degree(n)
    diagonal = params.d * np.arange(n, dtype=float)
    if n == 1:
        return diagonal.astype(np.complex128)

    couplings = params.a * np.arange(1, n, dtype=float) + params.b
    if np.all(couplings > 0):
        eigenvalues = eigh_tridiagonal(diagonal, np.sqrt(couplings), eigvals_only=True)
        return np.asarray(eigenvalues, dtype=np.complex128)

    # sign-balanced: upper entries sqrt|B|, lower sign(B) sqrt|B|
    root = np.sqrt(np.abs(couplings))
    matrix = np.diag(diagonal) + np.diag(root, 1) + np.diag(np.sign(couplings) * root, -1)
    return np.linalg.eigvals(matrix).astype(np.complex128)


def _circle_seeds(params: RecurrenceParams, n: int) -> np.ndarray:
    radius = max(2.0 * math.sqrt(abs(params.a) * n) + abs(params.d) * n, 1.0) * 1.1
    angles = 2.0 * np.pi * (np.arange(n) + 0.25) / n
    return params.d * n / 2.0 + radius * np.exp(1j * angles)


def _initial_guesses(params: RecurrenceParams, n: int, rng: np.random.Generator) -> np.ndarray:
    try:
        seeds = tridiagonal_zeros(params, n)
        if not np.all(np.isfinite(seeds)):
            raise np.linalg.LinAlgError("non-finite eigenvalues")
    except np.linalg.LinAlgError as e:
        logger.warning(f"Jacobi seeds unavailable for n={n} ({e}), using circle seeds")
        seeds = _circle_seeds(params, n)

    noise = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return seeds + JITTER * (1.0 + np.abs(seeds)) * noise


def _newton_ratios(params: RecurrenceParams, n: int, zs: np.ndarray) -> np.ndarray:
    values, derivatives, _ = eval_pi_batch(params, zs, n, with_derivative=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = values / derivatives
    stuck = ~np.isfinite(ratios)
    if np.any(stuck):
        # a vanishing derivative off a root: nudge the estimate instead
        ratios[stuck] = JITTER * (1.0 + np.abs(zs[stuck]))
    return ratios


def _aberth_step(zs: np.ndarray, ratios: np.ndarray) -> np.ndarray:
    differences = zs[:, None] - zs[None, :]
    np.fill_diagonal(differences, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = 1.0 / differences
    inverse[~np.isfinite(inverse)] = 0.0
    np.fill_diagonal(inverse, 0.0)
    denominator = 1.0 - ratios * inverse.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        steps = ratios / denominator
    return np.where(np.isfinite(steps), steps, ratios)


def _quadratic_zeros(params: RecurrenceParams) -> np.ndarray:
    """Roots of x (x - d) - (a + b), cancellation-free."""
    d, c = params.d, params.a + params.b
    s = cmath.sqrt(d * d + 4.0 * c)
    q = (d + s) / 2.0 if abs(d + s) >= abs(d - s) else (d - s) / 2.0
    if q == 0:
        return np.zeros(2, dtype=np.complex128)
    return np.array([q, -c / q], dtype=np.complex128)


def _sorted(zs: np.ndarray) -> np.ndarray:
    return zs[np.lexsort((zs.imag, zs.real))]


def scale_zeros(params: RecurrenceParams, n: int, zeros) -> np.ndarray:
    """Scaled coordinates of zeros: (x - n d)/sqrt(n) for d != 0, y for IIA/IIB, x/(2 sqrt(b)) for IIC."""
    zeros = np.asarray(zeros, dtype=np.complex128)
    root_n = math.sqrt(n)
    tag = params.case_tag
    if tag.has_linear_diagonal:
        return (zeros - n * params.d) / root_n
    if tag is CaseTag.IIA:
        return zeros / root_n
    if tag is CaseTag.IIB:
        return -1j * zeros / root_n
    if params.b > 0:
        return zeros / (2.0 * math.sqrt(params.b))
    return zeros.copy()


def zero_residuals(params: RecurrenceParams, zeros) -> np.ndarray:
    """|pi_n| / (|pi_n'| * distance to the nearest other zero) at each zero."""
    zeros = np.asarray(zeros, dtype=np.complex128)
    n = len(zeros)
    if n == 0:
        return np.zeros(0)
    values, derivatives, _ = eval_pi_batch(params, zeros, n, with_derivative=True)

    if n == 1:
        gaps = np.ones(1)
    else:
        distances = np.abs(zeros[:, None] - zeros[None, :])
        np.fill_diagonal(distances, np.inf)
        gaps = distances.min(axis=1)

    magnitude = np.abs(values)
    with np.errstate(divide="ignore", invalid="ignore"):
        residuals = magnitude / (np.abs(derivatives) * gaps)
    residuals = np.where(magnitude == 0, 0.0, residuals)
    return np.where(np.isnan(residuals), np.inf, residuals)


def _zero_set(params: RecurrenceParams, n: int, zeros: np.ndarray, iterations: int) -> ZeroSet:
    zeros = _sorted(zeros)
    return ZeroSet(
        params=params,
        n=n,
        zeros=zeros,
        residuals=zero_residuals(params, zeros),
        scaled=scale_zeros(params, n, zeros),
        iterations=iterations,
    )


def find_zeros(params: RecurrenceParams, n: int, tol: float = DEFAULT_TOL,
               maxiter: int = DEFAULT_MAXITER, seed: int = DEFAULT_SEED,
               certification_threshold: float = CERTIFICATION_THRESHOLD) -> ZeroSet:
    n = _check_degree(n)
    if not tol > 0:
        raise InvalidInputError(f"Tolerance must be positive, got {tol}")
    if maxiter < 1:
        raise InvalidInputError(f"maxiter must be positive, got {maxiter}")

    if n == 1:
        return _zero_set(params, n, np.zeros(1, dtype=np.complex128), 0)
    if n == 2:
        return _zero_set(params, n, _quadratic_zeros(params), 0)

    rng = np.random.default_rng(seed)
    zs = _initial_guesses(params, n, rng)
    converged = np.zeros(n, dtype=bool)
    iterations = 0

    for iterations in range(1, maxiter + 1):
        ratios = _newton_ratios(params, n, zs)
        converged = np.abs(ratios) < tol * (1.0 + np.abs(zs))
        if np.all(converged):
            break
        steps = _aberth_step(zs, ratios)
        zs = np.where(converged, zs, zs - steps)
        logger.debug(f"Aberth iteration {iterations}: max step {np.max(np.abs(steps)):.3e}, "
                     f"{int(np.count_nonzero(~converged))} roots moving")
    else:
        unconverged = [int(i) for i in np.flatnonzero(~converged)]
        partial = _zero_set(params, n, zs, iterations)
        logger.warning(f"Aberth iteration left {len(unconverged)} of {n} roots unconverged "
                       f"after {maxiter} iterations")
        raise ConvergenceError(
            f"{len(unconverged)} roots of pi_{n} did not converge in {maxiter} iterations",
            partial=partial,
            unconverged=unconverged,
        )

    # final polish of every root together
    zs = zs - _aberth_step(zs, _newton_ratios(params, n, zs))
    result = _zero_set(params, n, zs, iterations)
    logger.info(f"Found {n} zeros for case {params.case_tag.value} in {iterations} iterations, "
                f"max residual {result.max_residual():.3e}")
    if not result.certified(certification_threshold):
        logger.warning(f"Zero residual {result.max_residual():.3e} above certification "
                       f"threshold {certification_threshold}")
    return result


def zeros_vs_Yset(params: RecurrenceParams, n: int, curve: CurvePolyline,
                  exclusion: float = DEFAULT_ENDPOINT_EXCLUSION,
                  zero_set: Optional[ZeroSet] = None, **solver_options) -> float:
    """Largest distance from a scaled zero to the Y-shaped set, endpoints excluded."""
    if params.case_tag is not CaseTag.IB:
        raise InvalidInputError(f"zeros_vs_Yset needs case IB, got {params.case_tag.value}")
    if params.d < 0:
        params = params.reflected()
        zero_set = None
    if zero_set is None:
        zero_set = find_zeros(params, n, **solver_options)

    A = params.A
    stem = complex(-math.sqrt(n) * params.d, 0.0)
    top = complex(0.0, 2.0 * math.sqrt(A))
    endpoints = (stem, top, top.conjugate())

    distances = [
        distance_to_Yset(A, params.d, n, z, curve)
        for z in zero_set.scaled
        if min(abs(z - e) for e in endpoints) > exclusion
    ]
    if not distances:
        logger.warning(f"All {n} zeros fall within {exclusion} of the Y-set endpoints")
        return 0.0
    return float(max(distances))
