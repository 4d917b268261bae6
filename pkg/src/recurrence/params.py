"""
Parameter triple (d, a, b) of the recurrence
pi_{n+1}(x) = (x - d n) pi_n(x) - (a n + b) pi_{n-1}(x),
its derived case tag and the classical families it contains.
"""
import logging
import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..exceptions import InvalidInputError

logger = logging.getLogger(__name__)


class CaseTag(str, Enum):
    IA = "IA"
    IB = "IB"
    IC = "IC"
    IIA = "IIA"
    IIB = "IIB"
    IIC = "IIC"

    @property
    def has_linear_diagonal(self) -> bool:
        return self in (CaseTag.IA, CaseTag.IB, CaseTag.IC)


@dataclass(frozen=True)
class RecurrenceParams:
    d: float
    a: float
    b: float = 0.0

    def __post_init__(self):
        for name in ("d", "a", "b"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError) as e:
                raise InvalidInputError(f"Parameter {name} must be real: {e}") from e
            if not math.isfinite(value):
                raise InvalidInputError(f"Parameter {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def A(self) -> float:
        return -self.a

    @property
    def B(self) -> float:
        return -self.b

    @property
    def case_tag(self) -> CaseTag:
        # d < 0 is tagged through the reflection x -> -x
        if self.d != 0:
            if self.a > 0:
                return CaseTag.IA
            if self.a < 0:
                return CaseTag.IB
            return CaseTag.IC
        if self.a > 0:
            return CaseTag.IIA
        if self.a < 0:
            return CaseTag.IIB
        return CaseTag.IIC

    @property
    def is_normalized(self) -> bool:
        return self.d >= 0

    def diagonal(self, k: int) -> float:
        return self.d * k

    def coupling(self, k: int) -> float:
        return self.a * k + self.b

    def reflected(self) -> "RecurrenceParams":
        return RecurrenceParams(-self.d, self.a, self.b)

    def normalized(self) -> Tuple["RecurrenceParams", bool]:
        """Params with d >= 0 and whether the reflection x -> -x was applied."""
        if self.d < 0:
            return self.reflected(), True
        return self, False

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["case_tag"] = self.case_tag.value
        return data


@dataclass(frozen=True)
class FamilyPreset:
    name: str
    params: RecurrenceParams
    shift: float = 0.0
    description: str = ""


def family_preset(name: str, parameter: Optional[float] = None) -> FamilyPreset:
    """Classical families with linear recurrence coefficients.

    ``shift`` is the translation x -> x - shift that brings A_n to d*n.
    """
    key = name.lower()
    if key == "hermite":
        return FamilyPreset("hermite", RecurrenceParams(0.0, 0.5, 0.0),
                            description="monic Hermite, B_n = n/2")
    if key == "chebyshev":
        return FamilyPreset("chebyshev", RecurrenceParams(0.0, 0.0, 0.25),
                            description="monic Chebyshev of the second kind, B_n = 1/4")
    if key == "charlier":
        if parameter is None or parameter <= 0:
            raise InvalidInputError("Charlier family needs a positive parameter")
        return FamilyPreset("charlier", RecurrenceParams(1.0, parameter, 0.0), shift=parameter,
                            description=f"monic Charlier, A_n = n + {parameter}, B_n = {parameter} n")
    raise InvalidInputError(f"Unknown family: {name}")


def get_supported_families() -> Dict[str, str]:
    return {
        "hermite": "d=0, a=1/2, b=0",
        "chebyshev": "d=0, a=0, b=1/4",
        "charlier": "d=1, a=c, b=0 after x -> x - c",
    }
