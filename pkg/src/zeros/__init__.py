from .zero_finder import (
    ZeroSet,
    find_zeros,
    tridiagonal_zeros,
    zero_residuals,
    scale_zeros,
    zeros_vs_Yset,
)

__all__ = [
    "ZeroSet",
    "find_zeros",
    "tridiagonal_zeros",
    "zero_residuals",
    "scale_zeros",
    "zeros_vs_Yset",
]
