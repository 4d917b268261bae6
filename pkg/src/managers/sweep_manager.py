"""
Comparison sweeps: recurrence value against the asymptotic formula over a
list of degrees and scaled points.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, model_validator, validator

from ..arithmetic.backends import OracleMode
from ..arithmetic.scaled_complex import ScaledComplex, scaled_rel_error
from ..asymptotics.formula_factory import asymptotic_value
from ..asymptotics.regions import DEFAULT_DELTA, Region, RegionKind, classify_region, physical_argument
from ..exceptions import InvalidInputError, PrasympError
from ..geometry.curve_geometry import curve_normal, curve_point_at
from ..geometry.lazy_curve import get_curve_manager
from ..recurrence.params import CaseTag, RecurrenceParams
from ..recurrence.recurrence_core import MAX_BITS, eval_pi, eval_pi_adaptive

logger = logging.getLogger(__name__)

DEFAULT_N_LIST = [100, 400, 1600]
LEFT_POINT = -5.03
CURVE_OFFSET = 0.15
# oscillatory points keep |cos| of at least this much at every degree, if possible
MIN_CLEARANCE = 0.7
NODE_WINDOW = 0.2
NODE_STEPS = 40
# absolute slack for rounding-level error changes
MONOTONE_SLACK = 1e-12


class SweepPoint(BaseModel):
    re: float
    im: float = 0.0
    region: Optional[RegionKind] = None

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def at(cls, point: complex, region: Optional[RegionKind] = None) -> "SweepPoint":
        point = complex(point)
        return cls(re=point.real, im=point.imag, region=region)


class GridSpec(BaseModel):
    region: RegionKind
    count: int = 20

    @validator('count')
    def validate_count(cls, v):
        if v < 1:
            raise ValueError('Grid needs at least one point')
        return v


class SweepConfig(BaseModel):
    d: float
    a: float
    b: float = 0.0
    n_list: List[int] = DEFAULT_N_LIST
    points: List[SweepPoint] = []
    grid: Optional[GridSpec] = None
    mode: OracleMode = OracleMode.AUTO
    bits: int = 256
    max_bits: int = MAX_BITS
    highprec_max_n: int = 1600
    delta: float = DEFAULT_DELTA
    output: Optional[str] = None
    format: str = "csv"
    reflected: bool = False

    @validator('n_list')
    def validate_n_list(cls, v):
        if not v:
            raise ValueError('n_list must not be empty')
        if any(n < 1 for n in v):
            raise ValueError('Degrees must be positive')
        if any(later <= earlier for earlier, later in zip(v, v[1:])):
            raise ValueError('n_list must be strictly ascending')
        return v

    @validator('delta')
    def validate_delta(cls, v):
        if v <= 0:
            raise ValueError('delta must be positive')
        return v

    @validator('format')
    def validate_format(cls, v):
        if v not in ("csv", "json"):
            raise ValueError('format must be csv or json')
        return v

    @model_validator(mode='after')
    def normalize_and_classify(self):
        if self.d < 0:
            logger.info(f"Normalizing d={self.d} < 0 by the reflection x -> -x")
            self.d = -self.d
            self.points = [SweepPoint.at(-p.value, p.region) for p in self.points]
            self.reflected = True

        params = self.params
        if self.grid is not None:
            self.points = self.points + [SweepPoint.at(p, None)
                                         for p in grid_points(params, self.n_list[0], self.grid, self.delta)]
        if not self.points:
            raise ValueError('Sweep needs at least one point or a grid')

        for point in self.points:
            if point.region is RegionKind.TURNING_POINT_EXCLUDED:
                raise ValueError(f'Point {point.value!r} is forced into the excluded region')
            if point.region is not None:
                continue
            for n in self.n_list:
                region = classify_region(params, n, point.value, self.delta)
                if region.kind is RegionKind.TURNING_POINT_EXCLUDED:
                    raise ValueError(f'Point {point.value!r} lies within delta of a turning point at n={n}')
        return self

    @property
    def params(self) -> RecurrenceParams:
        return RecurrenceParams(self.d, self.a, self.b)

    def oracle_mode(self, n: int) -> OracleMode:
        if self.mode is OracleMode.AUTO:
            return OracleMode.HIGHPREC if n <= self.highprec_max_n else OracleMode.NATIVE
        return self.mode

    def exact_value(self, n: int, x: complex) -> ScaledComplex:
        """Recurrence value; AUTO raises the precision until two runs agree."""
        mode = self.oracle_mode(n)
        if self.mode is OracleMode.AUTO and mode is OracleMode.HIGHPREC:
            return eval_pi_adaptive(self.params, x, n, self.bits, self.max_bits).value
        return eval_pi(self.params, x, n, mode, self.bits).value


@dataclass
class ErrorRow:
    n: int
    point: complex
    region: str
    error: Optional[float]
    log_gap: Optional[float] = None
    exact: Optional[ScaledComplex] = None
    approx: Optional[ScaledComplex] = None
    failure: Optional[str] = None

    def to_row(self) -> List[Any]:
        return [
            self.n, self.point.real, self.point.imag, self.region,
            self.error, self.log_gap, self.failure or "",
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "point": [self.point.real, self.point.imag],
            "region": self.region,
            "error": self.error,
            "log_gap": self.log_gap,
            "exact": self.exact.to_json() if self.exact is not None else None,
            "approx": self.approx.to_json() if self.approx is not None else None,
            "failure": self.failure,
        }


ROW_HEADER = ["n", "re", "im", "region", "rel_error", "log_gap", "failure"]


@dataclass
class ErrorReport:
    case: str
    n_list: List[int]
    rows: List[ErrorRow]
    config_echo: Dict[str, Any] = field(default_factory=dict)

    def errors_by_point(self) -> Dict[Tuple[float, float], List[Optional[float]]]:
        table: Dict[Tuple[float, float], Dict[int, Optional[float]]] = {}
        for row in self.rows:
            table.setdefault((row.point.real, row.point.imag), {})[row.n] = row.error
        return {key: [by_n.get(n) for n in self.n_list] for key, by_n in table.items()}

    def summary(self) -> Dict[str, Dict[int, float]]:
        """Max error per region kind and degree."""
        result: Dict[str, Dict[int, float]] = {}
        for row in self.rows:
            if row.error is None:
                continue
            by_n = result.setdefault(row.region, {})
            by_n[row.n] = max(by_n.get(row.n, 0.0), row.error)
        return result

    def violations(self) -> List[Dict[str, Any]]:
        """Points whose error increases somewhere along n_list, or that failed."""
        flagged = []
        for (re, im), errors in self.errors_by_point().items():
            if any(e is None for e in errors):
                flagged.append({"point": [re, im], "errors": errors, "reason": "failed"})
                continue
            if any(later > earlier + MONOTONE_SLACK for earlier, later in zip(errors, errors[1:])):
                flagged.append({"point": [re, im], "errors": errors, "reason": "not monotone"})
        return flagged

    def failures(self) -> List[ErrorRow]:
        return [row for row in self.rows if row.failure is not None]

    def to_rows(self) -> List[List[Any]]:
        return [row.to_row() for row in self.rows]

    def to_dict(self) -> Dict[str, Any]:
        summary = {region: {str(n): err for n, err in by_n.items()}
                   for region, by_n in self.summary().items()}
        return {
            "case": self.case,
            "config": self.config_echo,
            "n_list": self.n_list,
            "rows": [row.to_dict() for row in self.rows],
            "summary": summary,
            "violations": self.violations(),
        }


def grid_points(params: RecurrenceParams, n: int, spec: GridSpec, delta: float = DEFAULT_DELTA) -> List[complex]:
    """Evenly spaced real scaled points inside one region (params with d >= 0)."""
    tag = params.case_tag
    pad = 2.0 * delta
    count = spec.count

    if tag is CaseTag.IA:
        edge = 2.0 * math.sqrt(params.a)
        intervals = {
            RegionKind.OSCILLATORY_BULK: (-edge + pad, edge - pad),
            RegionKind.OSCILLATORY_LEFT: (-math.sqrt(n) * params.d + pad, -edge - pad),
            RegionKind.OUTER: (edge + 1.0, edge + 1.0 + count),
        }
    elif tag is CaseTag.IB:
        z_a = get_curve_manager().get_curve(params.A).z_A
        intervals = {
            RegionKind.OSCILLATORY_LEFT: (-math.sqrt(n) * params.d + pad, z_a - pad),
            RegionKind.OUTER: (1.0, 1.0 + count),
        }
    elif tag is CaseTag.IC:
        intervals = {
            RegionKind.OSCILLATORY_BULK: (pad, params.d - pad),
            RegionKind.OUTER: (params.d + 1.0, params.d + 1.0 + count),
        }
    elif tag in (CaseTag.IIA, CaseTag.IIB):
        edge = 2.0 * math.sqrt(abs(params.a))
        intervals = {
            RegionKind.OSCILLATORY_BULK: (pad, edge - pad),
            RegionKind.OSCILLATORY_LEFT: (-edge + pad, -pad),
            RegionKind.OUTER: (edge + 1.0, edge + 1.0 + count),
        }
    else:
        if not params.b > 0:
            raise InvalidInputError(f"Case IIC needs b > 0, got b={params.b}")
        scale = 2.0 * math.sqrt(params.b)
        intervals = {
            RegionKind.OSCILLATORY_BULK: (scale * (-1.0 + pad), scale * (1.0 - pad)),
            RegionKind.OUTER: (scale * 2.0, scale * (2.0 + count)),
        }

    if spec.region not in intervals:
        raise InvalidInputError(f"No grid for region {spec.region.value} in case {tag.value}")
    low, high = intervals[spec.region]
    if not low < high:
        raise InvalidInputError(f"Region {spec.region.value} is too narrow for a grid at n={n}")
    if count == 1:
        return [complex((low + high) / 2.0, 0.0)]
    return [complex(t, 0.0) for t in np.linspace(low, high, count)]


def curve_sample_point(A: float, offset: float = CURVE_OFFSET) -> complex:
    """Mid-arc point of Gamma_A moved off the curve along its normal."""
    curve = get_curve_manager().get_curve(A)
    point = curve_point_at(curve, 0.5)
    return point + offset * curve_normal(A, point)


def _nominal_points(params: RecurrenceParams) -> List[SweepPoint]:
    tag = params.case_tag
    if tag is CaseTag.IA:
        root = math.sqrt(params.a)
        values = [3.0 * root, 0.0, LEFT_POINT * root]
    elif tag is CaseTag.IB:
        root = math.sqrt(params.A)
        return [
            SweepPoint.at(3.0 * root),
            SweepPoint.at(LEFT_POINT * root),
            SweepPoint.at(curve_sample_point(params.A), RegionKind.CURVE_NEIGHBORHOOD),
        ]
    elif tag is CaseTag.IC:
        values = [2.0 * params.d, 0.5679 * params.d]
    elif tag is CaseTag.IIA:
        root = math.sqrt(2.0 * params.a)
        values = [3.0 * root, root, -root]
    elif tag is CaseTag.IIB:
        root = math.sqrt(params.A)
        values = [3.0 * root, 1.2 * root]
    else:
        if not params.b > 0:
            raise InvalidInputError(f"Case IIC needs b > 0, got b={params.b}")
        scale = 2.0 * math.sqrt(params.b)
        values = [2.0 * scale, 0.3 * scale]
    return [SweepPoint.at(v) for v in values]


def _length_scale(params: RecurrenceParams) -> float:
    tag = params.case_tag
    if tag in (CaseTag.IA, CaseTag.IIA):
        return math.sqrt(params.a)
    if tag in (CaseTag.IB, CaseTag.IIB):
        return math.sqrt(params.A)
    if tag is CaseTag.IC:
        return params.d
    return 2.0 * math.sqrt(params.b)


def point_clearance(params: RecurrenceParams, point: SweepPoint, n_list: List[int],
                    delta: float = DEFAULT_DELTA) -> float:
    """Smallest clearance from the oscillation nodes over n_list; 0 where a degree has no formula."""
    worst = 1.0
    for n in n_list:
        if point.region is not None:
            region = Region.forced(point.region)
        else:
            region = classify_region(params, n, point.value, delta)
            if region.kind is RegionKind.TURNING_POINT_EXCLUDED:
                return 0.0
        try:
            worst = min(worst, asymptotic_value(params, n, point.value, region, delta).clearance)
        except (PrasympError, ArithmeticError):
            return 0.0
    return worst


def _candidates(params: RecurrenceParams, point: SweepPoint) -> List[SweepPoint]:
    """Nearby points of the same region, nearest first."""
    offsets = sorted(np.linspace(-NODE_WINDOW, NODE_WINDOW, 2 * NODE_STEPS + 1), key=abs)
    if point.region is RegionKind.CURVE_NEIGHBORHOOD:
        curve = get_curve_manager().get_curve(params.A)
        result = []
        for t in offsets:
            base = curve_point_at(curve, 0.5 + float(t))
            result.append(SweepPoint.at(base + CURVE_OFFSET * curve_normal(params.A, base), point.region))
        return result
    scale = _length_scale(params)
    return [SweepPoint.at(point.value + scale * float(t), point.region) for t in offsets]


def _clear_of_nodes(params: RecurrenceParams, point: SweepPoint, n_list: List[int],
                    delta: float) -> SweepPoint:
    if point.region is not None:
        kinds = {point.region}
    else:
        kinds = {classify_region(params, n, point.value, delta).kind for n in n_list}
    if kinds == {RegionKind.OUTER}:
        return point
    if point_clearance(params, point, n_list, delta) >= MIN_CLEARANCE:
        return point

    best, best_clearance = point, -1.0
    for candidate in _candidates(params, point):
        if candidate.region is None:
            if {classify_region(params, n, candidate.value, delta).kind for n in n_list} != kinds:
                continue
        clearance = point_clearance(params, candidate, n_list, delta)
        if clearance > best_clearance:
            best, best_clearance = candidate, clearance
    logger.debug(f"Moved representative point {point.value!r} to {best.value!r} "
                 f"(clearance {best_clearance:.3f} over n={n_list})")
    return best


def representative_points(params: RecurrenceParams, n_list: Optional[List[int]] = None,
                          delta: float = DEFAULT_DELTA) -> List[SweepPoint]:
    """One scaled point per region that has a formula in the case of params.

    Oscillatory points are shifted within a small window so that no degree in
    n_list puts them next to a zero of the oscillating factor.
    """
    if params.d < 0:
        return [SweepPoint.at(-p.value, p.region)
                for p in representative_points(params.reflected(), n_list, delta)]
    n_list = list(n_list or DEFAULT_N_LIST)
    return [_clear_of_nodes(params, p, n_list, delta) for p in _nominal_points(params)]


def _compare_point(config: SweepConfig, params: RecurrenceParams, n: int, point: SweepPoint) -> ErrorRow:
    z = point.value
    region = Region.forced(point.region) if point.region is not None else None
    try:
        if region is None:
            region = classify_region(params, n, z, config.delta)
        x = physical_argument(params, n, z)
        exact = config.exact_value(n, x)
        approx = asymptotic_value(params, n, z, region, config.delta)
        error = scaled_rel_error(approx.value, exact)
        return ErrorRow(n, z, region.kind.value, error, approx.log_gap, exact, approx.value)
    except (PrasympError, ArithmeticError) as e:
        logger.warning(f"Comparison failed at n={n}, point={z!r}: {e}")
        kind = region.kind.value if region is not None else "unknown"
        return ErrorRow(n, z, kind, None, failure=f"{type(e).__name__}: {e}")


def compare_sweep(config: SweepConfig, threads: int = 1,
                  config_echo: Optional[Dict[str, Any]] = None) -> ErrorReport:
    params = config.params
    tasks = [(n, point) for n in config.n_list for point in config.points]
    logger.info(f"Comparing case {params.case_tag.value} over n={config.n_list} "
                f"at {len(config.points)} points ({len(tasks)} evaluations, {threads} threads)")

    if params.case_tag is CaseTag.IB:
        # trace once before workers start
        get_curve_manager().get_curve(params.A)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(lambda task: _compare_point(config, params, *task), tasks))
    else:
        rows = [_compare_point(config, params, n, point) for n, point in tasks]

    for n in config.n_list:
        errors = [row.error for row in rows if row.n == n and row.error is not None]
        if errors:
            logger.info(f"n={n}: max relative error {max(errors):.3e}")

    echo = dict(config_echo or {})
    echo["sweep"] = {"d": config.d, "a": config.a, "b": config.b, "reflected": config.reflected}
    report = ErrorReport(case=params.case_tag.value, n_list=list(config.n_list), rows=rows,
                         config_echo=echo)
    for violation in report.violations():
        logger.warning(f"Error not decreasing at point {violation['point']}: {violation['errors']}")
    return report
