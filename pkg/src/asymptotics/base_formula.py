"""
Common machinery for the asymptotic formulas.

Every formula is assembled as a complex logarithm and turned into a
ScaledComplex once, so factors like (n/e)**n never exist as native floats.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional, Tuple

from ..arithmetic.scaled_complex import ScaledComplex, scaled_add
from ..exceptions import ExcludedRegionError, InvalidInputError, WrongRegionError
from ..kernels.branch_kernels import principal_log
from ..recurrence.params import CaseTag, RecurrenceParams
from .regions import DEFAULT_DELTA, Region, RegionKind, classify_region, physical_argument

logger = logging.getLogger(__name__)

BranchPair = Tuple[ScaledComplex, ScaledComplex]


@dataclass(frozen=True)
class AsymptoticValue:
    """Formula value with its two branch terms.

    When ``selected`` is None the value is the sum of ``branch_parts``;
    otherwise it is ``branch_parts[selected]``.
    """
    value: ScaledComplex
    region: Region
    branch_parts: Optional[BranchPair] = None
    selected: Optional[int] = None

    @property
    def log_gap(self) -> Optional[float]:
        """log|first part| - log|second part|."""
        if self.branch_parts is None:
            return None
        first, second = self.branch_parts
        if first.is_zero or second.is_zero:
            return math.inf
        return first.log_abs() - second.log_abs()

    @property
    def clearance(self) -> float:
        """|value| / (|first| + |second|) for a summed pair, 1 for a selected branch.

        Near a zero of the oscillating factor this drops towards 0.
        """
        if self.selected is not None or self.branch_parts is None:
            return 1.0
        if self.value.is_zero:
            return 0.0
        logs = [part.log_abs() for part in self.branch_parts]
        top = max(logs)
        if top == -math.inf:
            return 0.0
        total = sum(math.exp(v - top) for v in logs)
        return min(1.0, math.exp(self.value.log_abs() - top) / total)

    def scale(self, factor: complex) -> "AsymptoticValue":
        parts = None
        if self.branch_parts is not None:
            parts = (self.branch_parts[0].scale(factor), self.branch_parts[1].scale(factor))
        return AsymptoticValue(self.value.scale(factor), self.region, parts, self.selected)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"value": self.value.to_json(), "region": self.region.to_dict()}
        if self.branch_parts is not None:
            data["branch_parts"] = [part.to_json() for part in self.branch_parts]
            data["selected"] = self.selected
            data["log_gap"] = self.log_gap
        return data


def clog(w: complex) -> complex:
    return principal_log(w)


def selected_pair(plus: ScaledComplex, minus: ScaledComplex, region: Region,
                  selected: int = 0) -> AsymptoticValue:
    parts = (plus, minus)
    return AsymptoticValue(parts[selected], region, parts, selected)


def summed_pair(plus: ScaledComplex, minus: ScaledComplex, region: Region) -> AsymptoticValue:
    return AsymptoticValue(scaled_add(plus, minus), region, (plus, minus), None)


def cosine_pair(log_amplitude: complex, phase: complex, region: Region,
                factor: complex = 1.0) -> AsymptoticValue:
    """factor * exp(L) * 2 cos(phase) as exp(L + i phase) + exp(L - i phase)."""
    plus = ScaledComplex.from_log(log_amplitude + 1j * phase).scale(factor)
    minus = ScaledComplex.from_log(log_amplitude - 1j * phase).scale(factor)
    return summed_pair(plus, minus, region)


def sine_pair(log_amplitude: complex, phase: complex, region: Region) -> AsymptoticValue:
    """exp(L) * sin(phase) as the difference of exponentials over 2i."""
    plus = ScaledComplex.from_log(log_amplitude + 1j * phase).scale(-0.5j)
    minus = ScaledComplex.from_log(log_amplitude - 1j * phase).scale(0.5j)
    return summed_pair(plus, minus, region)


class AsymptoticFormula(ABC):
    case_tag: CaseTag
    supported_regions: FrozenSet[RegionKind] = frozenset()

    def __init__(self, params: RecurrenceParams, n: int):
        if int(n) != n or n < 1:
            raise InvalidInputError(f"Degree must be a positive integer, got {n}")
        if params.d < 0:
            raise InvalidInputError("Formulas expect d >= 0; reflect x -> -x first")
        if params.case_tag is not self.case_tag:
            raise InvalidInputError(
                f"{type(self).__name__} handles case {self.case_tag.value}, got {params.case_tag.value}"
            )
        self.params = params
        self.n = int(n)
        self.root_n = math.sqrt(n)
        self.log_n = math.log(n)

    def classify(self, point: complex, delta: float = DEFAULT_DELTA) -> Region:
        return classify_region(self.params, self.n, point, delta)

    def physical_argument(self, point: complex) -> complex:
        return physical_argument(self.params, self.n, point)

    def _resolve_region(self, point: complex, region: Optional[Region], delta: float) -> Region:
        if region is None:
            region = self.classify(point, delta)
        if region.kind is RegionKind.TURNING_POINT_EXCLUDED:
            raise ExcludedRegionError(
                f"Point {point!r} is within the turning-point exclusion radius (case {self.case_tag.value})"
            )
        if region.kind not in self.supported_regions:
            raise WrongRegionError(
                f"Case {self.case_tag.value} has no formula for region {region.kind.value}"
            )
        return region

    def evaluate(self, point: complex, region: Optional[Region] = None,
                 delta: float = DEFAULT_DELTA) -> AsymptoticValue:
        point = complex(point)
        region = self._resolve_region(point, region, delta)
        return self._evaluate(point, region)

    def phase(self, point: complex, region: Optional[Region] = None,
              delta: float = DEFAULT_DELTA) -> float:
        """Full argument of the oscillating factor at a real coordinate."""
        point = complex(point)
        if point.imag != 0:
            raise InvalidInputError(f"Oscillatory phase needs a real coordinate, got {point!r}")
        region = self._resolve_region(point, region, delta)
        if region.kind not in (RegionKind.OSCILLATORY_BULK, RegionKind.OSCILLATORY_LEFT):
            raise WrongRegionError(f"No oscillatory phase in region {region.kind.value}")
        return float(complex(self._phase(point, region)).real)

    def branch_values(self, point: complex, region: Optional[Region] = None,
                      delta: float = DEFAULT_DELTA) -> BranchPair:
        value = self.evaluate(point, region, delta)
        if value.branch_parts is None:
            raise WrongRegionError("Formula carries no branch decomposition")
        return value.branch_parts

    @abstractmethod
    def _evaluate(self, point: complex, region: Region) -> AsymptoticValue:
        pass

    @abstractmethod
    def _phase(self, point: complex, region: Region) -> complex:
        pass

    def get_formula_type(self) -> str:
        return self.case_tag.value


def power_of_i(n: int) -> complex:
    return (1 + 0j, 1j, -1 + 0j, -1j)[n % 4]
