"""
Formula factory and the per-case entry points.

Parameters with d < 0 are handled through x -> -x: the scaled point is
negated, the formula for the reflected parameters is evaluated and the
value is multiplied by (-1)**n.
"""
import logging
from typing import Dict, List, Optional, Tuple, Type

from ..exceptions import InvalidInputError, WrongRegionError
from ..recurrence.params import CaseTag, RecurrenceParams
from .base_formula import AsymptoticFormula, AsymptoticValue
from .case_one import CaseIAFormula, CaseIBFormula, CaseICFormula
from .case_two import CaseIIAFormula, CaseIIBFormula, CaseIICFormula
from .regions import DEFAULT_DELTA, Region

logger = logging.getLogger(__name__)

_FORMULAS: Dict[CaseTag, Type[AsymptoticFormula]] = {
    CaseTag.IA: CaseIAFormula,
    CaseTag.IB: CaseIBFormula,
    CaseTag.IC: CaseICFormula,
    CaseTag.IIA: CaseIIAFormula,
    CaseTag.IIB: CaseIIBFormula,
    CaseTag.IIC: CaseIICFormula,
}


def create_formula(params: RecurrenceParams, n: int) -> AsymptoticFormula:
    """Formula object for params with d >= 0."""
    formula_class = _FORMULAS.get(params.case_tag)
    if formula_class is None:
        raise InvalidInputError(f"Unsupported case: {params.case_tag}")
    return formula_class(params, n)


def get_supported_cases() -> List[str]:
    return [tag.value for tag in _FORMULAS]


def _normalized(params: RecurrenceParams, point: complex) -> Tuple[RecurrenceParams, complex, bool]:
    if params.d < 0:
        return params.reflected(), -complex(point), True
    return params, complex(point), False


def asymptotic_value(params: RecurrenceParams, n: int, point: complex,
                     region: Optional[Region] = None, delta: float = DEFAULT_DELTA,
                     expected: Optional[CaseTag] = None) -> AsymptoticValue:
    """Asymptotic pi_n at a scaled point, in whichever case params fall into."""
    if expected is not None and params.case_tag is not expected:
        raise InvalidInputError(f"Expected case {expected.value}, params are case {params.case_tag.value}")
    params, point, reflected = _normalized(params, point)
    value = create_formula(params, n).evaluate(point, region, delta)
    if reflected:
        value = value.scale((-1.0) ** n)
    return value


def asym_IA(params: RecurrenceParams, n: int, z: complex, region: Optional[Region] = None,
            delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, z, region, delta, CaseTag.IA)


def asym_IB(params: RecurrenceParams, n: int, z: complex, region: Optional[Region] = None,
            delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, z, region, delta, CaseTag.IB)


def asym_IC(params: RecurrenceParams, n: int, y: complex, region: Optional[Region] = None,
            delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, y, region, delta, CaseTag.IC)


def asym_IIA(params: RecurrenceParams, n: int, y: complex, region: Optional[Region] = None,
             delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, y, region, delta, CaseTag.IIA)


def asym_IIB(params: RecurrenceParams, n: int, y: complex, region: Optional[Region] = None,
             delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, y, region, delta, CaseTag.IIB)


def asym_IIB_direct(params: RecurrenceParams, n: int, y: complex, region: Optional[Region] = None,
                    delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    """IIB evaluated from its own printed form instead of the rotation to IIA."""
    if params.case_tag is not CaseTag.IIB:
        raise InvalidInputError(f"Expected case IIB, params are case {params.case_tag.value}")
    return CaseIIBFormula(params, n).evaluate_direct(y, region, delta)


def asym_IIC(params: RecurrenceParams, n: int, x: complex, region: Optional[Region] = None,
             delta: float = DEFAULT_DELTA) -> AsymptoticValue:
    return asymptotic_value(params, n, x, region, delta, CaseTag.IIC)


def oscillatory_phase(params: RecurrenceParams, n: int, point: complex,
                      region: Optional[Region] = None, delta: float = DEFAULT_DELTA) -> float:
    """Full argument of the cos (sin for IIC) factor at a real scaled point."""
    if params.d < 0:
        raise InvalidInputError("oscillatory_phase expects d >= 0")
    formula = create_formula(params, n)
    try:
        return formula.phase(point, region, delta)
    except WrongRegionError as e:
        logger.error(f"No oscillatory phase for case {params.case_tag.value} at {point!r}: {e}")
        raise


def branch_values(params: RecurrenceParams, n: int, point: complex,
                  region: Optional[Region] = None, delta: float = DEFAULT_DELTA):
    """Both one-sided branch terms at a point and their log-magnitude gap."""
    value = asymptotic_value(params, n, point, region, delta)
    if value.branch_parts is None:
        raise WrongRegionError(
            f"Case {params.case_tag.value} has no branch decomposition in region {value.region.kind.value}"
        )
    return value.branch_parts, value.log_gap
