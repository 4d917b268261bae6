from .regions import DEFAULT_DELTA, Region, RegionKind, classify_region, physical_argument, scaled_coordinate
from .base_formula import AsymptoticFormula, AsymptoticValue
from .case_two import chebyshev_closed_form
from .formula_factory import (
    create_formula,
    get_supported_cases,
    asymptotic_value,
    asym_IA,
    asym_IB,
    asym_IC,
    asym_IIA,
    asym_IIB,
    asym_IIB_direct,
    asym_IIC,
    oscillatory_phase,
    branch_values,
)

__all__ = [
    "DEFAULT_DELTA",
    "Region",
    "RegionKind",
    "classify_region",
    "physical_argument",
    "scaled_coordinate",
    "AsymptoticFormula",
    "AsymptoticValue",
    "chebyshev_closed_form",
    "create_formula",
    "get_supported_cases",
    "asymptotic_value",
    "asym_IA",
    "asym_IB",
    "asym_IC",
    "asym_IIA",
    "asym_IIB",
    "asym_IIB_direct",
    "asym_IIC",
    "oscillatory_phase",
    "branch_values",
]
