from .params import CaseTag, RecurrenceParams, FamilyPreset, family_preset
from .recurrence_core import (
    PolyValue,
    eval_pi,
    eval_pi_adaptive,
    eval_pi_deriv,
    eval_pi_batch,
    eval_family,
    ratio_sequence,
    log_product,
    wk_asymptotic,
)

__all__ = [
    "CaseTag",
    "RecurrenceParams",
    "FamilyPreset",
    "family_preset",
    "PolyValue",
    "eval_pi",
    "eval_pi_adaptive",
    "eval_pi_deriv",
    "eval_pi_batch",
    "eval_family",
    "ratio_sequence",
    "log_product",
    "wk_asymptotic",
]
