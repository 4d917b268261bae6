"""
Complex numbers with a separated base-2 exponent.

A ScaledComplex holds ``mantissa * 2**exponent`` with the mantissa kept in
canonical form (1 <= |mantissa| < 2, or exactly zero with exponent 0).
Renormalization only moves powers of two between mantissa and exponent, so
it never adds rounding error of its own.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict

from ..exceptions import InvalidInputError, ScaledOverflowError, ScaledZeroDivisionError

logger = logging.getLogger(__name__)

RADIX = 2
MANTISSA_DIGITS = 53
EXPONENT_MAX = 2 ** 63 - 1
EXPONENT_MIN = -(2 ** 63 - 1)

LN2 = math.log(2.0)
# Cody-Waite split of ln 2; k * _LN2_HI is exact for |k| < 2**21
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10


def _ldexp_complex(value: complex, shift: int) -> complex:
    return complex(math.ldexp(value.real, shift), math.ldexp(value.imag, shift))


def _check_exponent(exponent: int) -> int:
    if not EXPONENT_MIN <= exponent <= EXPONENT_MAX:
        raise ScaledOverflowError(f"Exponent {exponent} outside the signed 64-bit range")
    return exponent


@dataclass(frozen=True)
class ScaledComplex:
    mantissa: complex = 0j
    exponent: int = 0

    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls(0j, 0)

    @classmethod
    def one(cls) -> "ScaledComplex":
        return cls(1 + 0j, 0)

    @classmethod
    def from_complex(cls, value: complex) -> "ScaledComplex":
        return scale_normalize(value, 0)

    @classmethod
    def from_log(cls, log_value: complex) -> "ScaledComplex":
        """exp(log_value) without leaving the native float range."""
        log_value = complex(log_value)
        if log_value.real == -math.inf:
            return cls.zero()
        if not (math.isfinite(log_value.real) and math.isfinite(log_value.imag)):
            raise InvalidInputError(f"Non-finite logarithm: {log_value!r}")

        k = math.floor(log_value.real / LN2)
        remainder = (log_value.real - k * _LN2_HI) - k * _LN2_LO
        return scale_normalize(cmath.exp(complex(remainder, log_value.imag)), k)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ScaledComplex":
        try:
            mantissa = complex(float(data["re"]), float(data["im"]))
            exponent = int(data["exp2"])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"Malformed scaled value {data!r}: {e}") from e
        return scale_normalize(mantissa, exponent)

    @classmethod
    def from_text(cls, text: str) -> "ScaledComplex":
        fields = text.split()
        if len(fields) != 3:
            raise InvalidInputError(f"Expected 'm_re m_im e', got {text!r}")
        try:
            mantissa = complex(float(fields[0]), float(fields[1]))
            exponent = int(fields[2])
        except ValueError as e:
            raise InvalidInputError(f"Malformed scaled value {text!r}: {e}") from e
        return scale_normalize(mantissa, exponent)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def to_complex(self) -> complex:
        """Native value; components beyond the float range become infinities."""
        parts = []
        for component in (self.mantissa.real, self.mantissa.imag):
            try:
                parts.append(math.ldexp(component, self.exponent))
            except OverflowError:
                parts.append(math.copysign(math.inf, component))
        return complex(parts[0], parts[1])

    def log_abs(self) -> float:
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * LN2

    def arg(self) -> float:
        return cmath.phase(self.mantissa)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.mantissa.conjugate(), self.exponent)

    def scale(self, factor: complex) -> "ScaledComplex":
        return scale_normalize(self.mantissa * complex(factor), self.exponent)

    def to_json(self) -> Dict[str, Any]:
        return {"re": self.mantissa.real, "im": self.mantissa.imag, "exp2": self.exponent}

    def to_text(self) -> str:
        return f"{self.mantissa.real!r} {self.mantissa.imag!r} {self.exponent}"

    def __mul__(self, other: "ScaledComplex") -> "ScaledComplex":
        return scaled_mul(self, other)

    def __add__(self, other: "ScaledComplex") -> "ScaledComplex":
        return scaled_add(self, other)

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.exponent)

    def __sub__(self, other: "ScaledComplex") -> "ScaledComplex":
        return scaled_add(self, -other)

    def __truediv__(self, other: "ScaledComplex") -> "ScaledComplex":
        if other.is_zero:
            raise ScaledZeroDivisionError("Division by a scaled zero")
        if self.is_zero:
            return ScaledComplex.zero()
        return scale_normalize(self.mantissa / other.mantissa,
                               _check_exponent(self.exponent - other.exponent))


def scale_normalize(mantissa: complex, exponent: int = 0) -> ScaledComplex:
    mantissa = complex(mantissa)
    if not (math.isfinite(mantissa.real) and math.isfinite(mantissa.imag)):
        raise InvalidInputError(f"Non-finite mantissa: {mantissa!r}")
    if mantissa == 0:
        return ScaledComplex.zero()

    largest = max(abs(mantissa.real), abs(mantissa.imag))
    _, shift = math.frexp(largest)
    shift -= 1
    mantissa = _ldexp_complex(mantissa, -shift)
    if abs(mantissa) >= 2.0:
        mantissa = _ldexp_complex(mantissa, -1)
        shift += 1
    return ScaledComplex(mantissa, _check_exponent(int(exponent) + shift))


def scaled_mul(u: ScaledComplex, v: ScaledComplex) -> ScaledComplex:
    if u.is_zero or v.is_zero:
        return ScaledComplex.zero()
    return scale_normalize(u.mantissa * v.mantissa, _check_exponent(u.exponent + v.exponent))


def scaled_add(u: ScaledComplex, v: ScaledComplex) -> ScaledComplex:
    if u.is_zero:
        return v
    if v.is_zero:
        return u

    gap = u.exponent - v.exponent
    if gap > MANTISSA_DIGITS:
        return u
    if gap < -MANTISSA_DIGITS:
        return v
    if gap >= 0:
        return scale_normalize(u.mantissa + _ldexp_complex(v.mantissa, -gap), u.exponent)
    return scale_normalize(_ldexp_complex(u.mantissa, gap) + v.mantissa, v.exponent)


def scaled_rel_error(u: ScaledComplex, v: ScaledComplex) -> float:
    """|u/v - 1|, or +inf when the magnitudes are not comparable."""
    if v.is_zero:
        raise ScaledZeroDivisionError("Relative error against a zero reference")
    if u.is_zero:
        return 1.0

    gap = u.exponent - v.exponent
    if abs(gap) > MANTISSA_DIGITS:
        return math.inf
    ratio = _ldexp_complex(u.mantissa / v.mantissa, gap)
    return abs(ratio - 1.0)
