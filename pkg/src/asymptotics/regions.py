"""
Region classification of scaled evaluation points.

Coordinates by case: z with x = n d + sqrt(n) z (IA, IB), y with x = n y (IC),
x = sqrt(n) y (IIA), x = i sqrt(n) y (IIB) and x itself (IIC, classified in
xi = x / (2 sqrt(b))).
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from ..exceptions import InvalidInputError
from ..geometry.curve_geometry import CurvePolyline, polyline_distance, segment_distance
from ..geometry.lazy_curve import get_curve_manager
from ..recurrence.params import CaseTag, RecurrenceParams

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 0.1


class RegionKind(str, Enum):
    OUTER = "outer"
    OSCILLATORY_BULK = "oscillatory_bulk"
    OSCILLATORY_LEFT = "oscillatory_left"
    CURVE_NEIGHBORHOOD = "curve_neighborhood"
    TURNING_POINT_EXCLUDED = "turning_point_excluded"

    @property
    def is_oscillatory(self) -> bool:
        return self in (RegionKind.OSCILLATORY_BULK, RegionKind.OSCILLATORY_LEFT,
                        RegionKind.CURVE_NEIGHBORHOOD)


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    margin: float = 0.0

    @classmethod
    def forced(cls, kind: RegionKind) -> "Region":
        return cls(RegionKind(kind), 0.0)

    def to_dict(self):
        return {"kind": self.kind.value, "margin": self.margin}


def physical_argument(params: RecurrenceParams, n: int, point: complex) -> complex:
    """x corresponding to a scaled point (params with d >= 0)."""
    point = complex(point)
    root_n = math.sqrt(n)
    tag = params.case_tag
    if tag in (CaseTag.IA, CaseTag.IB):
        return n * params.d + root_n * point
    if tag is CaseTag.IC:
        return n * point
    if tag is CaseTag.IIA:
        return root_n * point
    if tag is CaseTag.IIB:
        return 1j * root_n * point
    return point


def scaled_coordinate(params: RecurrenceParams, n: int, x: complex) -> complex:
    x = complex(x)
    root_n = math.sqrt(n)
    tag = params.case_tag
    if tag in (CaseTag.IA, CaseTag.IB):
        return (x - n * params.d) / root_n
    if tag is CaseTag.IC:
        return x / n
    if tag is CaseTag.IIA:
        return x / root_n
    if tag is CaseTag.IIB:
        return -1j * x / root_n
    return x


def _segment_region(point: complex, left: float, right: float, turning: List[float],
                    split: Optional[float], delta: float, left_kind: RegionKind) -> Region:
    """Classification against a real segment with turning points.

    Points within delta of the segment and right of ``split`` are bulk,
    those left of it get ``left_kind``.
    """
    tp_distance = min(abs(point - t) for t in turning)
    if tp_distance <= delta:
        return Region(RegionKind.TURNING_POINT_EXCLUDED, tp_distance)

    cut_distance = segment_distance(point, complex(left, 0.0), complex(right, 0.0))
    if cut_distance > delta:
        return Region(RegionKind.OUTER, cut_distance - delta)

    margin = min(delta - cut_distance, tp_distance - delta)
    if split is None or point.real >= split:
        return Region(RegionKind.OSCILLATORY_BULK, margin)
    return Region(left_kind, margin)


def classify_region(params: RecurrenceParams, n: int, scaled_point: complex,
                    delta: float = DEFAULT_DELTA, curve: Optional[CurvePolyline] = None) -> Region:
    if not delta > 0:
        raise InvalidInputError(f"Region margin delta must be positive, got {delta}")
    if n < 1:
        raise InvalidInputError(f"Degree must be positive, got {n}")
    point = complex(scaled_point)
    if params.d < 0:
        # x -> -x maps every scaled coordinate to its negative
        params, point = params.reflected(), -point

    tag = params.case_tag
    root_n = math.sqrt(n)

    if tag is CaseTag.IA:
        edge = 2.0 * math.sqrt(params.a)
        stem = -root_n * params.d
        return _segment_region(point, stem, edge, [stem, -edge, edge], -edge, delta,
                               RegionKind.OSCILLATORY_LEFT)

    if tag is CaseTag.IB:
        return _classify_yset(params, n, point, delta, curve)

    if tag is CaseTag.IC:
        return _segment_region(point, 0.0, params.d, [0.0, params.d], None, delta,
                               RegionKind.OSCILLATORY_BULK)

    if tag in (CaseTag.IIA, CaseTag.IIB):
        edge = 2.0 * math.sqrt(abs(params.a))
        return _segment_region(point, -edge, edge, [-edge, edge], 0.0, delta,
                               RegionKind.OSCILLATORY_LEFT)

    if params.b <= 0:
        raise InvalidInputError(f"Case IIC needs b > 0, got b={params.b}")
    xi = point / (2.0 * math.sqrt(params.b))
    return _segment_region(xi, -1.0, 1.0, [-1.0, 1.0], None, delta, RegionKind.OSCILLATORY_BULK)


def _classify_yset(params: RecurrenceParams, n: int, point: complex, delta: float,
                   curve: Optional[CurvePolyline]) -> Region:
    A = params.A
    if curve is None:
        curve = get_curve_manager().get_curve(A)
    z_a = curve.z_A
    stem = -math.sqrt(n) * params.d
    top = complex(0.0, 2.0 * math.sqrt(A))

    turning = [complex(stem, 0.0), complex(z_a, 0.0), top, top.conjugate()]
    tp_distance = min(abs(point - t) for t in turning)
    if tp_distance <= delta:
        return Region(RegionKind.TURNING_POINT_EXCLUDED, tp_distance)

    stem_distance = segment_distance(point, complex(stem, 0.0), complex(z_a, 0.0))
    curve_distance = polyline_distance(point, curve.points)
    nearest = min(stem_distance, curve_distance)
    if nearest > delta:
        return Region(RegionKind.OUTER, nearest - delta)

    margin = min(delta - nearest, tp_distance - delta)
    if stem_distance <= curve_distance:
        return Region(RegionKind.OSCILLATORY_LEFT, margin)
    return Region(RegionKind.CURVE_NEIGHBORHOOD, margin)
