"""
Exact forward evaluation of the monic polynomials pi_n and their derivatives.

The native path iterates numpy arrays of arguments at once. After every step
the pair (pi_k, pi_{k-1}) and the derivative pair are multiplied by the same
power of two, so the only rounding is that of the unscaled recurrence.
"""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Tuple, Union

import numpy as np

from ..arithmetic.backends import ArithmeticBackend, OracleMode, create_backend
from ..arithmetic.scaled_complex import ScaledComplex, scale_normalize, scaled_mul, scaled_rel_error
from ..exceptions import InvalidInputError, NearZeroRatioError, ScaledOverflowError
from ..kernels.branch_kernels import sqrt_quad
from .params import RecurrenceParams, family_preset

logger = logging.getLogger(__name__)

NEAR_ZERO_RATIO = 1e-290
MAX_BITS = 4096
ESCALATION_RTOL = 1e-13


@dataclass(frozen=True)
class PolyValue:
    n: int
    x: complex
    value: ScaledComplex
    derivative: Optional[ScaledComplex] = None

    def to_dict(self):
        data = {"n": self.n, "x": [self.x.real, self.x.imag], "value": self.value.to_json()}
        if self.derivative is not None:
            data["derivative"] = self.derivative.to_json()
        return data


def _check_degree(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidInputError(f"Degree must be a nonnegative integer, got {n}")
    return int(n)


def eval_pi_batch(params: RecurrenceParams, xs, n: int,
                  with_derivative: bool = False) -> Tuple[np.ndarray, Optional[np.ndarray], np.ndarray]:
    """Scaled recurrence over an array of arguments.

    Returns (values, derivatives, exponents): pi_n(xs[j]) = values[j] * 2**exponents[j]
    and the derivative shares the same exponent.
    """
    n = _check_degree(n)
    xs = np.atleast_1d(np.asarray(xs, dtype=np.complex128))
    exponents = np.zeros(xs.shape, dtype=np.int64)

    if n == 0:
        derivatives = np.zeros_like(xs) if with_derivative else None
        return np.ones_like(xs), derivatives, exponents

    prev = np.ones_like(xs)
    cur = xs.copy()
    dprev = np.zeros_like(xs)
    dcur = np.ones_like(xs)

    for k in range(1, n):
        shift = xs - params.d * k
        coupling = params.a * k + params.b
        nxt = shift * cur - coupling * prev
        if with_derivative:
            dnxt = cur + shift * dcur - coupling * dprev
            dprev, dcur = dcur, dnxt
        prev, cur = cur, nxt

        size = np.maximum(np.abs(cur), np.abs(prev))
        if with_derivative:
            size = np.maximum(size, np.maximum(np.abs(dcur), np.abs(dprev)))
        _, shifts = np.frexp(size)
        factor = np.ldexp(1.0, -shifts)
        prev *= factor
        cur *= factor
        if with_derivative:
            dprev *= factor
            dcur *= factor
        exponents += shifts

    if not np.all(np.isfinite(cur)):
        raise ScaledOverflowError(f"Recurrence overflowed at degree {n}")
    return cur, (dcur if with_derivative else None), exponents


def _backend_recurrence(backend: ArithmeticBackend, params: RecurrenceParams, x: complex, n: int,
                        with_derivative: bool):
    xv = backend.lift(x)
    d = backend.lift(params.d)
    a = backend.lift(params.a)
    b = backend.lift(params.b)

    if n == 0:
        return backend.lift(1), backend.lift(0)

    prev, cur = backend.lift(1), xv
    dprev, dcur = backend.lift(0), backend.lift(1)
    for k in range(1, n):
        shift = xv - d * k
        coupling = a * k + b
        nxt = shift * cur - coupling * prev
        if with_derivative:
            dprev, dcur = dcur, cur + shift * dcur - coupling * dprev
        prev, cur = cur, nxt
    return cur, dcur


def _evaluate(params: RecurrenceParams, x: complex, n: int, with_derivative: bool,
              mode: Union[str, OracleMode], bits: int) -> PolyValue:
    n = _check_degree(n)
    x = complex(x)
    backend = create_backend(mode, bits)

    if backend is None:
        values, derivatives, exponents = eval_pi_batch(params, [x], n, with_derivative)
        exponent = int(exponents[0])
        value = scale_normalize(complex(values[0]), exponent)
        derivative = scale_normalize(complex(derivatives[0]), exponent) if with_derivative else None
        return PolyValue(n=n, x=x, value=value, derivative=derivative)

    value, derivative = _backend_recurrence(backend, params, x, n, with_derivative)
    return PolyValue(
        n=n,
        x=x,
        value=backend.to_scaled(value),
        derivative=backend.to_scaled(derivative) if with_derivative else None,
    )


def eval_pi(params: RecurrenceParams, x: complex, n: int,
            mode: Union[str, OracleMode] = OracleMode.NATIVE, bits: int = 256) -> PolyValue:
    return _evaluate(params, x, n, False, mode, bits)


def eval_pi_deriv(params: RecurrenceParams, x: complex, n: int,
                  mode: Union[str, OracleMode] = OracleMode.NATIVE, bits: int = 256) -> PolyValue:
    return _evaluate(params, x, n, True, mode, bits)


def _agree(u: ScaledComplex, v: ScaledComplex, rtol: float) -> bool:
    if u.is_zero or v.is_zero:
        return u.is_zero and v.is_zero
    return scaled_rel_error(u, v) <= rtol


def eval_pi_adaptive(params: RecurrenceParams, x: complex, n: int, bits: int = 256,
                     max_bits: int = MAX_BITS, rtol: float = ESCALATION_RTOL) -> PolyValue:
    """High-precision value, doubling the working precision until two runs agree to rtol."""
    if bits < 53:
        raise InvalidInputError(f"High-precision oracle needs at least 53 bits, got {bits}")
    max_bits = max(max_bits, bits)
    current = eval_pi(params, x, n, OracleMode.HIGHPREC, bits)
    if 2 * bits > max_bits:
        return current
    while 2 * bits <= max_bits:
        refined = eval_pi(params, x, n, OracleMode.HIGHPREC, 2 * bits)
        if _agree(current.value, refined.value, rtol):
            return refined
        logger.info(f"pi_{n}({complex(x)!r}) changed between {bits} and {2 * bits} bits, escalating")
        bits *= 2
        current = refined
    logger.warning(f"pi_{n}({complex(x)!r}) not stable at {bits} bits")
    return current


def eval_family(name: str, x: complex, n: int, parameter: Optional[float] = None,
                mode: Union[str, OracleMode] = OracleMode.NATIVE) -> PolyValue:
    """Evaluate a classical family in its own variable."""
    preset = family_preset(name, parameter)
    result = eval_pi(preset.params, complex(x) - preset.shift, n, mode)
    return PolyValue(n=result.n, x=complex(x), value=result.value)


def ratio_sequence(params: RecurrenceParams, x: complex, n: int) -> List[complex]:
    """w_1..w_n with w_k = pi_k / pi_{k-1}."""
    if int(n) != n or n < 1:
        raise InvalidInputError(f"Ratio sequence needs n >= 1, got {n}")
    x = complex(x)

    ratios = [x]
    for k in range(1, int(n)):
        previous = ratios[-1]
        if abs(previous) < NEAR_ZERO_RATIO:
            raise NearZeroRatioError(k, previous)
        ratios.append(x - params.d * k - (params.a * k + params.b) / previous)
    return ratios


def log_product(ratios: List[complex]) -> ScaledComplex:
    return reduce(scaled_mul, (scale_normalize(w) for w in ratios), ScaledComplex.one())


def wk_asymptotic(params: RecurrenceParams, x: complex, k: int, n: int) -> complex:
    """Two-term successive-approximation formula for w_k in the outer region."""
    if k < 1 or n < 1 or k > n:
        raise InvalidInputError(f"Need 1 <= k <= n, got k={k}, n={n}")
    if params.d < 0:
        raise InvalidInputError("Reflect d < 0 before using the w_k approximation")
    x = complex(x)
    d, a, b = params.d, params.a, params.b

    if params.case_tag.has_linear_diagonal:
        u = x - d * k
        s = sqrt_quad(a * k, u)
        return (u + s) / 2 * (1 + d / (2 * s) + (d * x - d * d * k) / (2 * s * s))

    s = sqrt_quad(a * k, x)
    return (x + s) / 2 * (1 + a / (s * s) - 2 * b / ((x + s) * s))
