from .branch_kernels import (
    BranchSign,
    sqrt_quad,
    log_pow,
    arccos_branch,
    principal_log,
)

__all__ = ["BranchSign", "sqrt_quad", "log_pow", "arccos_branch", "principal_log"]
