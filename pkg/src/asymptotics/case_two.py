"""
Formulas for d = 0: cases IIA (a > 0), IIB (a < 0) and IIC (a = 0).

IIA uses x = sqrt(n) y, IIB x = i sqrt(n) y and IIC the physical x, rescaled
to xi = x / (2 sqrt(b)) so the Chebyshev expressions apply for every b > 0.
"""
import cmath
import logging
import math

from ..arithmetic.scaled_complex import ScaledComplex, scaled_add
from ..exceptions import InvalidInputError, SingularPointError
from ..kernels.branch_kernels import arccos_branch, sqrt_quad
from ..recurrence.params import CaseTag, RecurrenceParams
from .base_formula import (
    AsymptoticFormula,
    AsymptoticValue,
    clog,
    cosine_pair,
    power_of_i,
    selected_pair,
    sine_pair,
    summed_pair,
)
from .regions import DEFAULT_DELTA, Region, RegionKind

logger = logging.getLogger(__name__)


def _hermite_type(n: int, y: complex, alpha: float, beta: float, region: Region) -> AsymptoticValue:
    """Outer and oscillatory formulas for pi_{k+1} = x pi_k - (alpha k + beta) pi_{k-1}, alpha > 0."""
    ratio = beta / alpha
    if region.kind is RegionKind.OUTER:
        phi = sqrt_quad(alpha, y)

        def branch(f: complex) -> ScaledComplex:
            log_value = (0.5 * n * math.log(n / (4.0 * math.e)) + n * clog(y + f)
                         + 0.5 * clog((y + f) / (2.0 * f))
                         + n * y * (y - f) / (4.0 * alpha))
            if beta != 0:
                log_value += ratio * clog((y + f) / (2.0 * y))
            return ScaledComplex.from_log(log_value)

        return selected_pair(branch(phi), branch(-phi), region, 0)

    root_alpha = math.sqrt(alpha)
    q = cmath.sqrt(2.0 * root_alpha - y) * cmath.sqrt(2.0 * root_alpha + y)
    log_amplitude = (0.5 * n * (math.log(n * alpha) - 1.0) + 0.5 * clog(root_alpha / q)
                     + n * y * y / (4.0 * alpha))
    if region.kind is RegionKind.OSCILLATORY_LEFT:
        if beta != 0:
            log_amplitude += ratio * clog(root_alpha / (-y))
        return cosine_pair(log_amplitude, _hermite_phase(n, y, alpha, beta, region), region,
                           factor=(-1.0) ** n)
    if beta != 0:
        log_amplitude += ratio * clog(root_alpha / y)
    return cosine_pair(log_amplitude, _hermite_phase(n, y, alpha, beta, region), region)


def _hermite_phase(n: int, y: complex, alpha: float, beta: float, region: Region) -> complex:
    root_alpha = math.sqrt(alpha)
    q = cmath.sqrt(2.0 * root_alpha - y) * cmath.sqrt(2.0 * root_alpha + y)
    order = n + 0.5 + beta / alpha
    if region.kind is RegionKind.OSCILLATORY_LEFT:
        return (order * arccos_branch(-y / (2.0 * root_alpha)) - math.pi / 4.0
                + n * y * q / (4.0 * alpha))
    return (order * arccos_branch(y / (2.0 * root_alpha)) - math.pi / 4.0
            - n * y * q / (4.0 * alpha))


class CaseIIAFormula(AsymptoticFormula):
    case_tag = CaseTag.IIA
    supported_regions = frozenset({
        RegionKind.OUTER,
        RegionKind.OSCILLATORY_BULK,
        RegionKind.OSCILLATORY_LEFT,
    })

    def _evaluate(self, y: complex, region: Region) -> AsymptoticValue:
        return _hermite_type(self.n, y, self.params.a, self.params.b, region)

    def _phase(self, y: complex, region: Region) -> complex:
        return _hermite_phase(self.n, y, self.params.a, self.params.b, region)


class CaseIIBFormula(AsymptoticFormula):
    """
    pi_n(i sqrt(n) y) for a < 0. The rotation x -> i x maps the recurrence
    onto case IIA with parameters (A, B), so the value is i**n times the IIA
    formula at the same y.
    """
    case_tag = CaseTag.IIB
    supported_regions = CaseIIAFormula.supported_regions

    def rotated(self) -> CaseIIAFormula:
        return CaseIIAFormula(RecurrenceParams(0.0, self.params.A, self.params.B), self.n)

    def _evaluate(self, y: complex, region: Region) -> AsymptoticValue:
        return self.rotated()._evaluate(y, region).scale(power_of_i(self.n))

    def evaluate_direct(self, y: complex, region: Region = None,
                        delta: float = DEFAULT_DELTA) -> AsymptoticValue:
        """The IIB formulas written out in y, with i**n carried in the logarithm."""
        y = complex(y)
        region = self._resolve_region(y, region, delta)
        n = self.n
        big_a, big_b = self.params.A, self.params.B
        quarter_turns = 0.5j * math.pi * (n % 4)
        if region.kind is RegionKind.OUTER:
            root = y * cmath.sqrt(1.0 - 4.0 * big_a / (y * y))

            def branch(s: complex) -> ScaledComplex:
                log_value = (quarter_turns + 0.5 * n * (math.log(n) - math.log(4.0) - 1.0)
                             + n * clog(y + s) + 0.5 * clog((y + s) / (2.0 * s))
                             + (big_b / big_a) * clog((y + s) / (2.0 * y))
                             + n * y / (4.0 * big_a) * (y - s))
                return ScaledComplex.from_log(log_value)

            return selected_pair(branch(root), branch(-root), region, 0)

        root_a = math.sqrt(big_a)
        q = cmath.sqrt(2.0 * root_a - y) * cmath.sqrt(2.0 * root_a + y)
        order = n + 0.5 + big_b / big_a
        log_amplitude = (quarter_turns + 0.5 * n * math.log(n * big_a / math.e)
                         + 0.5 * clog(root_a / q) + n * y * y / (4.0 * big_a))
        if region.kind is RegionKind.OSCILLATORY_LEFT:
            log_amplitude += 1j * math.pi * (n % 2)
            if big_b != 0:
                log_amplitude += (big_b / big_a) * clog(root_a / (-y))
            phase = (order * arccos_branch(-y / (2.0 * root_a)) - math.pi / 4.0
                     + n * y / (4.0 * big_a) * q)
        else:
            if big_b != 0:
                log_amplitude += (big_b / big_a) * clog(root_a / y)
            phase = (order * arccos_branch(y / (2.0 * root_a)) - math.pi / 4.0
                     - n * y / (4.0 * big_a) * q)
        plus = ScaledComplex.from_log(log_amplitude + 1j * phase)
        minus = ScaledComplex.from_log(log_amplitude - 1j * phase)
        return summed_pair(plus, minus, region)

    def _phase(self, y: complex, region: Region) -> complex:
        return _hermite_phase(self.n, y, self.params.A, self.params.B, region)


class CaseIICFormula(AsymptoticFormula):
    case_tag = CaseTag.IIC
    supported_regions = frozenset({RegionKind.OUTER, RegionKind.OSCILLATORY_BULK})

    def __init__(self, params: RecurrenceParams, n: int):
        super().__init__(params, n)
        if not params.b > 0:
            raise InvalidInputError(f"Case IIC needs b > 0, got b={params.b}")
        self.scale_factor = 2.0 * math.sqrt(params.b)
        self.log_scale = math.log(self.scale_factor)

    def xi(self, x: complex) -> complex:
        return complex(x) / self.scale_factor

    def evaluate(self, x: complex, region: Region = None,
                 delta: float = DEFAULT_DELTA) -> AsymptoticValue:
        xi = self.xi(x)
        if xi == 1 or xi == -1:
            raise SingularPointError(f"Case IIC formulas are singular at x={complex(x)!r}")
        return super().evaluate(x, region, delta)

    def _evaluate(self, x: complex, region: Region) -> AsymptoticValue:
        n = self.n
        xi = self.xi(x)
        if region.kind is RegionKind.OUTER:
            s = sqrt_quad(0.25, xi)

            def branch(f: complex) -> ScaledComplex:
                return ScaledComplex.from_log((n + 1) * clog((xi + f) / 2.0) - clog(f)
                                              + n * self.log_scale)

            return selected_pair(branch(s), branch(-s), region, 0)

        log_amplitude = -n * math.log(2.0) + n * self.log_scale - 0.5 * clog(1.0 - xi * xi)
        return sine_pair(log_amplitude, self._phase(x, region), region)

    def _phase(self, x: complex, region: Region) -> complex:
        return (self.n + 1) * arccos_branch(self.xi(x))


def chebyshev_closed_form(n: int, x: complex, b: float = 0.25) -> ScaledComplex:
    """Exact pi_n for d = a = 0 as the sum of both outer branches, valid on all of C except xi = +-1."""
    if int(n) != n or n < 0:
        raise InvalidInputError(f"Degree must be a non-negative integer, got {n}")
    if not b > 0:
        raise InvalidInputError(f"Closed form needs b > 0, got b={b}")
    n = int(n)
    scale = 2.0 * math.sqrt(b)
    xi = complex(x) / scale
    s = cmath.sqrt(xi * xi - 1.0)
    if s == 0:
        raise SingularPointError(f"Closed form is singular at x={complex(x)!r}")

    # integer powers, so any branch of Log gives the exact terms
    plus = ScaledComplex.from_log((n + 1) * clog((xi + s) / 2.0) - clog(s) + n * math.log(scale))
    minus = ScaledComplex.from_log((n + 1) * clog((xi - s) / 2.0) - clog(-s) + n * math.log(scale))
    return scaled_add(plus, minus)
