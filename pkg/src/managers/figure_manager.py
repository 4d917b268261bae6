import math
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from ..exceptions import InvalidInputError
from ..geometry.lazy_curve import get_curve_manager
from ..recurrence.params import CaseTag, RecurrenceParams
from ..zeros.zero_finder import find_zeros, zeros_vs_Yset
from .config_manager import Config
from .output_writer import write_csv, write_json

logger = logging.getLogger(__name__)

SEGMENT_SAMPLES = 201


class FigureManager:
    """Writes the data behind the Y-shaped cut plus zeros picture for case IB."""

    def __init__(self, output_dir: str, config: Optional[Config] = None):
        self.output_dir = Path(output_dir)
        self.config = config or Config()
        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"Figure manager initialized: {self.output_dir}")

    def emit_figure_data(self, params: RecurrenceParams, n: int) -> Dict[str, Path]:
        if params.case_tag is not CaseTag.IB:
            raise InvalidInputError(f"Figure data needs case IB (a < 0, d != 0), got {params.case_tag.value}")
        if params.d < 0:
            logger.info(f"Normalizing d={params.d} < 0 by the reflection x -> -x")
            params = params.reflected()

        settings = self.config
        echo = settings.echo()
        curve = get_curve_manager().get_curve(params.A, settings.curve.points, settings.curve.tol)
        zero_set = find_zeros(
            params, n,
            tol=settings.zeros.tol,
            maxiter=settings.zeros.maxiter,
            seed=settings.zeros.seed,
            certification_threshold=settings.zeros.certification_threshold,
        )
        distance = zeros_vs_Yset(params, n, curve, settings.zeros.endpoint_exclusion, zero_set=zero_set)

        stem = -math.sqrt(n) * params.d
        segment = np.linspace(stem, curve.z_A, SEGMENT_SAMPLES)
        header_lines = [f"z_A={curve.z_A!r}", f"n={n}", f"A={params.A!r}"]

        paths = {
            "curve": write_csv(self.output_dir / "curve.csv", ["re", "im", "residual"],
                               curve.to_rows(), echo, header_lines),
            "segment": write_csv(self.output_dir / "segment.csv", ["re", "im"],
                                 [[float(t), 0.0] for t in segment], echo, header_lines),
            "zeros": write_csv(self.output_dir / "zeros.csv",
                               ["re", "im", "scaled_re", "scaled_im", "residual"],
                               zero_set.to_rows(), echo, header_lines),
        }
        paths["overlay"] = write_json(self.output_dir / "overlay.json",
                                      self._overlay(params, n, curve, segment, zero_set, distance, echo))

        logger.info(f"Figure data for n={n} written to {self.output_dir} "
                    f"(max zero distance {distance:.4f})")
        return paths

    def _overlay(self, params, n, curve, segment, zero_set, distance, echo) -> Dict[str, Any]:
        return {
            "params": params.to_dict(),
            "n": n,
            "A": params.A,
            "z_A": curve.z_A,
            "max_zero_distance": distance,
            "endpoint_exclusion": self.config.zeros.endpoint_exclusion,
            "max_zero_residual": zero_set.max_residual(),
            "curve": [[float(p.real), float(p.imag)] for p in curve.points],
            "segment": [[float(t), 0.0] for t in segment],
            "zeros": [[float(s.real), float(s.imag)] for s in zero_set.scaled],
            "config": echo,
        }
