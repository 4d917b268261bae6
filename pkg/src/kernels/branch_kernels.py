"""
Elementary kernels with pinned branch conventions.

Every logarithm is the principal one (imaginary part in (-pi, pi]).
sqrt_quad(a, z) is the product of the principal square roots of z - r+ and
z - r-, r+- = +-2 sqrt(a), which behaves like z at infinity.
"""
import cmath
import logging
import math
from enum import IntEnum

from ..arithmetic.scaled_complex import ScaledComplex
from ..exceptions import BranchCutError, SingularPointError

logger = logging.getLogger(__name__)


class BranchSign(IntEnum):
    PLUS = 1
    MINUS = -1

    def apply(self, phi: complex) -> complex:
        return phi if self is BranchSign.PLUS else -phi


def quad_roots(a: float):
    """The two roots of z**2 - 4a."""
    if a > 0:
        r = 2.0 * math.sqrt(a)
        return complex(r, 0.0), complex(-r, 0.0)
    if a < 0:
        r = 2.0 * math.sqrt(-a)
        return complex(0.0, r), complex(0.0, -r)
    return 0j, 0j


def on_quad_cut(a: float, z: complex) -> bool:
    if a > 0:
        return z.imag == 0 and abs(z.real) < 2.0 * math.sqrt(a)
    if a < 0:
        # principal roots of z -+ 2i sqrt(A) cut along the leftward horizontal rays
        return abs(z.imag) == 2.0 * math.sqrt(-a) and z.real < 0
    return False


def sqrt_quad(a: float, z: complex) -> complex:
    z = complex(z)
    if a == 0:
        return z
    if on_quad_cut(a, z):
        raise BranchCutError(f"sqrt_quad({a}, {z!r}) evaluated on its cut")

    r_plus, r_minus = quad_roots(a)
    return cmath.sqrt(z - r_plus) * cmath.sqrt(z - r_minus)


def principal_log(w: complex) -> complex:
    w = complex(w)
    if w == 0:
        raise SingularPointError("Logarithm of zero")
    return cmath.log(w)


def log_pow(base: complex, exponent: complex) -> ScaledComplex:
    """base**exponent = exp(exponent * Log base) as a ScaledComplex."""
    base = complex(base)
    exponent = complex(exponent)
    if base == 0:
        if exponent.real > 0:
            return ScaledComplex.zero()
        raise SingularPointError(f"0 ** {exponent!r} is singular")
    if exponent == 0:
        return ScaledComplex.one()
    return ScaledComplex.from_log(exponent * cmath.log(base))


def arccos_branch(w: complex) -> complex:
    return cmath.acos(complex(w))
