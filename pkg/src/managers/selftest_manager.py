import math
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np

from ..arithmetic.backends import OracleMode
from ..arithmetic.scaled_complex import ScaledComplex, scaled_rel_error
from ..asymptotics.formula_factory import asym_IA, asym_IIB, asym_IIB_direct, asym_IIC
from ..asymptotics.regions import Region, RegionKind
from ..exceptions import PrasympError
from ..geometry.curve_geometry import distance_to_Yset, gamma_residual, solve_zA, trace_gamma
from ..geometry.lazy_curve import get_curve_manager
from ..kernels.branch_kernels import sqrt_quad
from ..recurrence.params import RecurrenceParams
from ..recurrence.recurrence_core import eval_pi
from ..zeros.zero_finder import find_zeros, zeros_vs_Yset

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _scaled_arithmetic() -> Tuple[bool, str]:
    big = ScaledComplex.from_log(1000.0 * math.log(10.0))
    product = big * big
    expected = 2000.0 * math.log(10.0)
    drift = abs(product.log_abs() - expected)
    return drift < 1e-9, f"|log(10^2000) drift| = {drift:.2e}"


def _oracle_equivalence() -> Tuple[bool, str]:
    params = RecurrenceParams(1.0, 1.0, 0.0)
    worst = 0.0
    for x in (80.0, 97.5, 130.25):
        native = eval_pi(params, x, 60).value
        exact = eval_pi(params, x, 60, OracleMode.RATIONAL).value
        worst = max(worst, scaled_rel_error(native, exact))
    return worst < 1e-12, f"max native/rational difference {worst:.2e}"


def _branch_kernels() -> Tuple[bool, str]:
    value = sqrt_quad(1.0, 3.0)
    far = sqrt_quad(-1.0, complex(-1e6, 5.0))
    ok = abs(value - math.sqrt(5.0)) < 1e-15 and abs(far / complex(-1e6, 5.0) - 1.0) < 1e-6
    return ok, f"sqrt_quad(1, 3) = {value.real!r}"


def _reflection() -> Tuple[bool, str]:
    n, x = 25, 7.5
    left = eval_pi(RecurrenceParams(1.5, 0.7, 0.2), x, n).value
    right = eval_pi(RecurrenceParams(-1.5, 0.7, 0.2), -x, n).value.scale((-1.0) ** n)
    error = scaled_rel_error(left, right)
    return error < 1e-13, f"reflection mismatch {error:.2e}"


def _chebyshev_exactness() -> Tuple[bool, str]:
    params = RecurrenceParams(0.0, 0.0, 0.25)
    bulk = Region.forced(RegionKind.OSCILLATORY_BULK)
    worst = 0.0
    for n in (5, 17, 40):
        for x in np.linspace(-0.99, 0.99, 50):
            x = float(x)
            exact = eval_pi(params, x, n).value.to_complex()
            approx = asym_IIC(params, n, x, region=bulk).value.to_complex()
            # error measured against the amplitude envelope, zeros included
            envelope = 0.5 ** n / math.sqrt(1.0 - x * x)
            worst = max(worst, abs(approx - exact) / envelope)
    return worst < 1e-10, f"max sine-formula error {worst:.2e}"


def _outer_convergence() -> Tuple[bool, str]:
    params = RecurrenceParams(1.0, 1.0, 0.0)
    errors = []
    for n in (100, 400):
        exact = eval_pi(params, n + math.sqrt(n) * 3.0, n).value
        errors.append(scaled_rel_error(asym_IA(params, n, 3.0).value, exact))
    return errors[1] < errors[0] and errors[1] < 0.05, f"errors at n=100, 400: {errors[0]:.3e}, {errors[1]:.3e}"


def _rotation() -> Tuple[bool, str]:
    params = RecurrenceParams(0.0, -1.0, 0.0)
    worst = 0.0
    for y in (3.0, complex(2.5, 1.0), -4.0):
        worst = max(worst, scaled_rel_error(asym_IIB(params, 64, y).value,
                                            asym_IIB_direct(params, 64, y).value))
    return worst < 1e-12, f"delegation vs direct {worst:.2e}"


def _junction() -> Tuple[bool, str]:
    z_a = solve_zA(1.0)
    residual = abs(gamma_residual(1.0, z_a))
    scaling = abs(solve_zA(4.0) - 2.0 * z_a)
    return residual < 1e-12 and scaling < 1e-10, f"z_A={z_a:.12f}, residual {residual:.1e}"


def _curve_trace() -> Tuple[bool, str]:
    curve = trace_gamma(1.0, npts=64)
    ends = max(abs(curve.points[0] - 2.0j), abs(curve.points[-1] + 2.0j))
    junction = curve.points[63] == complex(curve.z_A, 0.0)
    residual = curve.max_residual()
    ok = residual < 1e-10 and ends < 1e-9 and junction and len(curve.points) == 127
    return ok, f"{len(curve.points)} points, max residual {residual:.1e}"


def _y_set_distance() -> Tuple[bool, str]:
    n = 60
    curve = get_curve_manager().get_curve(1.0, 64)
    on_set = max(distance_to_Yset(1.0, 1.0, n, z, curve)
                 for z in (curve.z_A, -5.0, curve.points[20], curve.points[100]))
    below_stem = distance_to_Yset(1.0, 1.0, n, complex(-5.0, -0.5), curve)
    zeros = zeros_vs_Yset(RecurrenceParams(1.0, -1.0, 0.0), n, curve)
    ok = on_set < 1e-12 and abs(below_stem - 0.5) < 1e-12 and zeros < 1.0
    return ok, f"max zero distance at n={n}: {zeros:.3f}"


def _chebyshev_zeros() -> Tuple[bool, str]:
    zero_set = find_zeros(RecurrenceParams(0.0, 0.0, 0.25), 20)
    expected = np.sort(np.cos(np.arange(1, 21) * np.pi / 21))
    error = float(np.max(np.abs(np.sort(zero_set.zeros.real) - expected)))
    imag = float(np.max(np.abs(zero_set.zeros.imag)))
    return max(error, imag) < 1e-8, f"max deviation from cos(k pi/21) {max(error, imag):.2e}"


class SelftestManager:
    def __init__(self):
        self.checks: Dict[str, Callable[[], Tuple[bool, str]]] = {
            "scaled_arith": _scaled_arithmetic,
            "oracle_equivalence": _oracle_equivalence,
            "branch_kernels": _branch_kernels,
            "reflection": _reflection,
            "chebyshev_exactness": _chebyshev_exactness,
            "outer_convergence": _outer_convergence,
            "rotation": _rotation,
            "junction_z_A": _junction,
            "curve_trace": _curve_trace,
            "y_set_distance": _y_set_distance,
            "chebyshev_zeros": _chebyshev_zeros,
        }

    def run(self) -> List[CheckResult]:
        results = []
        for name, check in self.checks.items():
            start = time.perf_counter()
            try:
                passed, detail = check()
            except (PrasympError, ArithmeticError, ValueError) as e:
                logger.error(f"Selftest check {name} raised: {e}")
                passed, detail = False, f"{type(e).__name__}: {e}"
            elapsed = time.perf_counter() - start
            if not passed:
                logger.warning(f"Selftest check {name} failed: {detail}")
            results.append(CheckResult(name, bool(passed), detail, elapsed))
        return results

    @staticmethod
    def format_table(results: List[CheckResult]) -> str:
        width = max(len(r.name) for r in results) if results else 4
        lines = [f"{'check':<{width}}  result  seconds  detail"]
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.name:<{width}}  {status:<6}  {r.seconds:7.3f}  {r.detail}")
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} checks passed")
        return "\n".join(lines)
