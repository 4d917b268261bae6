"""
Exception hierarchy shared by every prasymp module.

The CLI maps InvalidInputError onto a usage exit code and every other
PrasympError onto a numerical-failure exit code.
"""
from typing import Any, List, Optional


class PrasympError(Exception):
    pass


class InvalidInputError(PrasympError, ValueError):
    pass


class ScaledOverflowError(PrasympError, OverflowError):
    pass


class ScaledZeroDivisionError(PrasympError, ZeroDivisionError):
    pass


class NearZeroRatioError(PrasympError):
    def __init__(self, k: int, value: complex):
        super().__init__(f"ratio w_{k} = {value!r} is below the near-zero threshold")
        self.k = k
        self.value = value


class BranchCutError(PrasympError, ValueError):
    pass


class SingularPointError(PrasympError, ValueError):
    pass


class RegionError(PrasympError):
    pass


class WrongRegionError(RegionError):
    pass


class ExcludedRegionError(RegionError):
    pass


class EndpointError(PrasympError, ValueError):
    pass


class SolverError(PrasympError, RuntimeError):
    pass


class TraceError(PrasympError, RuntimeError):
    def __init__(self, message: str, last_point: Optional[complex] = None):
        super().__init__(message)
        self.last_point = last_point


class ConvergenceError(PrasympError, RuntimeError):
    def __init__(self, message: str, partial: Any = None, unconverged: Optional[List[int]] = None):
        super().__init__(message)
        self.partial = partial
        self.unconverged = list(unconverged or [])
