"""
Formulas for d > 0: cases IA (a > 0), IB (a < 0) and IC (a = 0).

IA and IB use z with x = n d + sqrt(n) z, IC uses y with x = n y.
"""
import cmath
import logging
import math

from ..arithmetic.scaled_complex import ScaledComplex
from ..geometry.curve_geometry import gamma_function
from ..kernels.branch_kernels import arccos_branch, on_quad_cut, sqrt_quad
from ..recurrence.params import CaseTag
from .base_formula import (
    AsymptoticFormula,
    AsymptoticValue,
    clog,
    cosine_pair,
    selected_pair,
    summed_pair,
)
from .regions import Region, RegionKind

logger = logging.getLogger(__name__)


class CaseIAFormula(AsymptoticFormula):
    case_tag = CaseTag.IA
    supported_regions = frozenset({
        RegionKind.OUTER,
        RegionKind.OSCILLATORY_BULK,
        RegionKind.OSCILLATORY_LEFT,
    })

    def _head(self) -> float:
        return self.n * (self.log_n - 1.0)

    def _p(self, z: complex) -> complex:
        d, a = self.params.d, self.params.a
        return -a / d ** 2 - self.root_n * z / d

    def _outer_log(self, z: complex, phi: complex) -> complex:
        n, rn, d, a = self.n, self.root_n, self.params.d, self.params.a
        t = rn * d + z
        w = z + phi
        return (self._head() + n * clog(w / (2.0 * rn))
                + (-a / d ** 2 - rn * t / d) * clog(w / (2.0 * t))
                + 0.5 * clog(t / phi)
                + (2.0 * a - z * z - 4.0 * rn * d * z + (z + 4.0 * rn * d) * phi) / (4.0 * d * d))

    def _bulk_log(self, z: complex) -> complex:
        rn, d, a = self.root_n, self.params.d, self.params.a
        t = rn * d + z
        q = cmath.sqrt(4.0 * a - z * z)
        return (self._head() + self._p(z) * math.log(math.sqrt(a) / rn)
                + (a / d ** 2 + rn * t / d) * clog(d + z / rn)
                + 0.5 * clog(t / q)
                + (2.0 * a - z * z - 4.0 * rn * d * z) / (4.0 * d * d))

    def _left_log(self, z: complex) -> complex:
        rn, d, a = self.root_n, self.params.d, self.params.a
        t = rn * d + z
        s = sqrt_quad(a, -z)
        return (self._head() + self._p(z) * clog((-z + s) / (2.0 * rn))
                + (a / d ** 2 + rn * t / d) * clog(d + z / rn)
                + 0.5 * clog(t / s)
                + (2.0 * a - z * z - 4.0 * rn * d * z - (z + 4.0 * rn * d) * s) / (4.0 * d * d))

    def _evaluate(self, z: complex, region: Region) -> AsymptoticValue:
        if region.kind is RegionKind.OUTER:
            phi = sqrt_quad(self.params.a, z)
            plus = ScaledComplex.from_log(self._outer_log(z, phi))
            minus = ScaledComplex.from_log(self._outer_log(z, -phi))
            return selected_pair(plus, minus, region, 0)
        if region.kind is RegionKind.OSCILLATORY_BULK:
            return cosine_pair(self._bulk_log(z), self._phase(z, region), region)
        return cosine_pair(self._left_log(z), self._phase(z, region), region)

    def _phase(self, z: complex, region: Region) -> complex:
        p = self._p(z)
        if region.kind is RegionKind.OSCILLATORY_LEFT:
            return math.pi * (p - 0.5)
        rn, d, a = self.root_n, self.params.d, self.params.a
        q = cmath.sqrt(4.0 * a - z * z)
        return (p * arccos_branch(z / (2.0 * math.sqrt(a))) - math.pi / 4.0
                + (z + 4.0 * rn * d) * q / (4.0 * d * d))


class CaseIBFormula(AsymptoticFormula):
    case_tag = CaseTag.IB
    supported_regions = frozenset({
        RegionKind.OUTER,
        RegionKind.OSCILLATORY_LEFT,
        RegionKind.CURVE_NEIGHBORHOOD,
    })

    def _head(self) -> float:
        return self.n * (self.log_n - 1.0)

    def _p(self, z: complex) -> complex:
        return self.params.A / self.params.d ** 2 - self.root_n * z / self.params.d

    def _q(self, z: complex) -> complex:
        rn, d = self.root_n, self.params.d
        return -self.params.A / d ** 2 + rn * (rn * d + z) / d

    def _outer_branch(self, z: complex):
        """Canonical root and the index of the branch that carries the value.

        Left of Gamma_A inside the strip |Im z| < 2 sqrt(A) the value is the
        minus branch of the canonical root.
        """
        A = self.params.A
        if on_quad_cut(self.params.a, z):
            # limit from outside the strip
            upper = cmath.sqrt(complex(z.real, 0.0)) * cmath.sqrt(complex(z.real, 4.0 * math.sqrt(A)))
            return (upper if z.imag > 0 else upper.conjugate()), 0
        phi = sqrt_quad(self.params.a, z)
        if abs(z.imag) < 2.0 * math.sqrt(A) and z.real < 0 and gamma_function(A, z).real < 0:
            return phi, 1
        return phi, 0

    def _outer_log(self, z: complex, phi: complex) -> complex:
        rn, d, A = self.root_n, self.params.d, self.params.A
        t = rn * d + z
        return (self._head() + self._p(z) * clog((z + phi) / (2.0 * rn))
                + self._q(z) * clog(d + z / rn)
                + 0.5 * clog(t / phi)
                + (-2.0 * A - z * z - 4.0 * rn * d * z + (z + 4.0 * rn * d) * phi) / (4.0 * d * d))

    def _left_log(self, z: complex) -> complex:
        rn, d, A = self.root_n, self.params.d, self.params.A
        t = rn * d + z
        s = sqrt_quad(self.params.a, -z)
        return (self._head() + self._p(z) * clog((-z + s) / (2.0 * rn))
                + self._q(z) * clog(d + z / rn)
                + 0.5 * clog(t / s)
                + (-2.0 * A - z * z - 4.0 * rn * d * z - (z + 4.0 * rn * d) * s) / (4.0 * d * d))

    def _curve_terms(self, z: complex):
        n, rn, d, A = self.n, self.root_n, self.params.d, self.params.A
        t = rn * d + z
        s = sqrt_quad(self.params.a, z)
        p = self._p(z)
        common = (n * (0.5 * self.log_n - 1.0) + (self._q(z) + 0.5) * clog(t)
                  + (-2.0 * A - z * z - 4.0 * rn * d * z) / (4.0 * d * d))
        swing = (z + 4.0 * rn * d) * s / (4.0 * d * d)
        first = common + p * clog((z + s) / 2.0) - 0.5 * clog(s) + swing
        second = common + p * clog((z - s) / 2.0) - 0.5 * clog(-s) - swing
        return first, second

    def _evaluate(self, z: complex, region: Region) -> AsymptoticValue:
        if region.kind is RegionKind.OUTER:
            phi, selected = self._outer_branch(z)
            plus = ScaledComplex.from_log(self._outer_log(z, phi))
            minus = ScaledComplex.from_log(self._outer_log(z, -phi))
            return selected_pair(plus, minus, region, selected)
        if region.kind is RegionKind.OSCILLATORY_LEFT:
            return cosine_pair(self._left_log(z), self._phase(z, region), region)
        first, second = self._curve_terms(z)
        return summed_pair(ScaledComplex.from_log(first), ScaledComplex.from_log(second), region)

    def _phase(self, z: complex, region: Region) -> complex:
        return math.pi * (self._p(z) - 0.5)


class CaseICFormula(AsymptoticFormula):
    case_tag = CaseTag.IC
    supported_regions = frozenset({RegionKind.OUTER, RegionKind.OSCILLATORY_BULK})

    def _evaluate(self, y: complex, region: Region) -> AsymptoticValue:
        n, d = self.n, self.params.d
        exponent = n * y / d + 0.5
        if region.kind is RegionKind.OUTER:
            log_value = (n * (self.log_n - 1.0) + exponent * clog(y / (y - d))
                         + n * clog(y - d))
            return AsymptoticValue(ScaledComplex.from_log(log_value), region)
        log_amplitude = (n * (self.log_n - 1.0) + n * clog(d - y)
                         + exponent * clog(y / (d - y)))
        return cosine_pair(log_amplitude, self._phase(y, region), region)

    def _phase(self, y: complex, region: Region) -> complex:
        n, d = self.n, self.params.d
        return math.pi * (n - n * y / d - 0.5)
