"""
Oracle arithmetic for the recurrence: mpmath at configurable precision and
exact Gaussian rationals. Neither is a hot path.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Any, Optional, Union

import mpmath

from ..exceptions import InvalidInputError
from .scaled_complex import ScaledComplex, scale_normalize

logger = logging.getLogger(__name__)


class OracleMode(str, Enum):
    NATIVE = "native"
    HIGHPREC = "highprec"
    RATIONAL = "rational"
    AUTO = "auto"


def _to_fraction(value: Union[float, int, Rational]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(value)
    except (ValueError, OverflowError, TypeError) as e:
        raise InvalidInputError(f"Cannot represent {value!r} exactly: {e}") from e


@dataclass(frozen=True)
class ExactComplex:
    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def lift(cls, value: Any) -> "ExactComplex":
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(_to_fraction(value.real), _to_fraction(value.imag))
        return cls(_to_fraction(value), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def __add__(self, other: Any) -> "ExactComplex":
        other = ExactComplex.lift(other)
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other: Any) -> "ExactComplex":
        return self + (-ExactComplex.lift(other))

    def __rsub__(self, other: Any) -> "ExactComplex":
        return ExactComplex.lift(other) - self

    def __mul__(self, other: Any) -> "ExactComplex":
        other = ExactComplex.lift(other)
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    __rmul__ = __mul__


def _fraction_log2(q: Fraction) -> int:
    return abs(q.numerator).bit_length() - q.denominator.bit_length()


def _shift_fraction(q: Fraction, shift: int) -> Fraction:
    if shift >= 0:
        return q * (1 << shift)
    return q / (1 << -shift)


class ArithmeticBackend(ABC):
    def __init__(self, mode: OracleMode):
        self.mode = mode

    @abstractmethod
    def lift(self, value: Any) -> Any:
        pass

    @abstractmethod
    def to_scaled(self, value: Any) -> ScaledComplex:
        pass

    def get_backend_type(self) -> str:
        return self.mode.value


class HighPrecisionBackend(ArithmeticBackend):
    def __init__(self, bits: int = 256):
        super().__init__(OracleMode.HIGHPREC)
        if bits < 53:
            raise InvalidInputError(f"High-precision mode needs at least 53 bits, got {bits}")
        self.bits = bits
        # a private context keeps precision changes away from the global mpmath state
        self.ctx = mpmath.MPContext()
        self.ctx.prec = bits

    def lift(self, value: Any) -> Any:
        if isinstance(value, complex):
            return self.ctx.mpc(value.real, value.imag)
        if isinstance(value, Fraction):
            return self.ctx.mpf(value.numerator) / value.denominator
        return self.ctx.mpc(value)

    def to_scaled(self, value: Any) -> ScaledComplex:
        value = self.ctx.mpc(value)
        re, im = value.real, value.imag
        largest = max(abs(re), abs(im))
        if largest == 0:
            return ScaledComplex.zero()
        _, exponent = self.ctx.frexp(largest)
        mantissa = complex(float(self.ctx.ldexp(re, -exponent)), float(self.ctx.ldexp(im, -exponent)))
        return scale_normalize(mantissa, int(exponent))

    def get_backend_type(self) -> str:
        return f"highprec({self.bits})"


class RationalBackend(ArithmeticBackend):
    def __init__(self):
        super().__init__(OracleMode.RATIONAL)

    def lift(self, value: Any) -> ExactComplex:
        return ExactComplex.lift(value)

    def to_scaled(self, value: ExactComplex) -> ScaledComplex:
        value = ExactComplex.lift(value)
        if value.is_zero:
            return ScaledComplex.zero()
        exponent = max(_fraction_log2(q) for q in (value.re, value.im) if q != 0)
        mantissa = complex(float(_shift_fraction(value.re, -exponent)),
                           float(_shift_fraction(value.im, -exponent)))
        return scale_normalize(mantissa, exponent)


def create_backend(mode: Union[str, OracleMode], bits: int = 256) -> Optional[ArithmeticBackend]:
    """Backend for an oracle mode; None means the vectorized native path."""
    try:
        mode = OracleMode(mode)
    except ValueError as e:
        raise InvalidInputError(f"Unsupported arithmetic mode: {mode}") from e

    if mode in (OracleMode.NATIVE, OracleMode.AUTO):
        return None
    if mode is OracleMode.HIGHPREC:
        return HighPrecisionBackend(bits)
    return RationalBackend()
