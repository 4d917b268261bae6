from .scaled_complex import (
    ScaledComplex,
    scale_normalize,
    scaled_mul,
    scaled_add,
    scaled_rel_error,
)
from .backends import OracleMode, ExactComplex, create_backend

__all__ = [
    "ScaledComplex",
    "scale_normalize",
    "scaled_mul",
    "scaled_add",
    "scaled_rel_error",
    "OracleMode",
    "ExactComplex",
    "create_backend",
]
