import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .arithmetic.backends import OracleMode
from .asymptotics.base_formula import AsymptoticValue
from .asymptotics.formula_factory import asymptotic_value
from .asymptotics.regions import Region, RegionKind
from .geometry.curve_geometry import CurvePolyline
from .geometry.lazy_curve import get_curve_manager
from .managers.config_manager import Config, ConfigManager, RuntimeSettings
from .managers.figure_manager import FigureManager
from .managers.selftest_manager import CheckResult, SelftestManager
from .managers.sweep_manager import ErrorReport, SweepConfig, compare_sweep
from .recurrence.params import RecurrenceParams
from .recurrence.recurrence_core import PolyValue, eval_pi, eval_pi_adaptive
from .zeros.zero_finder import ZeroSet, find_zeros

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class VerificationSystem:
    """Resolved configuration plus the entry points the CLI dispatches to."""

    def __init__(self, config_path: str = "config/config.json"):
        self.config_manager = ConfigManager(config_path)
        self.config: Optional[Config] = None
        self.runtime: Optional[RuntimeSettings] = None

    def initialize(self, overrides: Optional[Dict[str, Any]] = None, verbose: bool = False) -> Config:
        self.config_manager.load_or_default()
        self.config = self.config_manager.apply_overrides(**(overrides or {}))
        self.runtime = RuntimeSettings()
        self._setup_logging(verbose)
        logger.info(f"Verification system ready (oracle {self.config.oracle.mode.value}, "
                    f"delta {self.config.asymptotics.delta}, threads {self.runtime.threads})")
        return self.config

    def _setup_logging(self, verbose: bool) -> None:
        log_config = self.config.logging
        level = logging.DEBUG if verbose else getattr(logging, log_config.level.upper())

        # stdout carries results, so logs go to stderr
        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if log_config.log_file:
            Path(log_config.log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_config.log_file))

        logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)

    def get_config(self) -> Config:
        if self.config is None:
            return self.initialize()
        return self.config

    def oracle_mode(self, n: int, mode: Optional[OracleMode] = None) -> OracleMode:
        oracle = self.get_config().oracle
        mode = OracleMode(mode) if mode is not None else oracle.mode
        if mode is OracleMode.AUTO:
            return OracleMode.HIGHPREC if n <= oracle.highprec_max_n else OracleMode.NATIVE
        return mode

    def evaluate(self, params: RecurrenceParams, x: complex, n: int,
                 mode: Optional[OracleMode] = None) -> PolyValue:
        settings = self.get_config().oracle
        oracle = self.oracle_mode(n, mode)
        requested = OracleMode(mode) if mode is not None else settings.mode
        if requested is OracleMode.AUTO and oracle is OracleMode.HIGHPREC:
            return eval_pi_adaptive(params, x, n, settings.highprec_bits, settings.highprec_max_bits)
        return eval_pi(params, x, n, oracle, settings.highprec_bits)

    def asymptotic(self, params: RecurrenceParams, n: int, point: complex,
                   region: Optional[RegionKind] = None) -> AsymptoticValue:
        forced = Region.forced(region) if region is not None else None
        return asymptotic_value(params, n, point, forced, self.get_config().asymptotics.delta)

    def compare(self, sweep: SweepConfig) -> ErrorReport:
        threads = self.runtime.threads if self.runtime is not None else 1
        return compare_sweep(sweep, threads=threads, config_echo=self.get_config().echo())

    def sweep_config(self, params: RecurrenceParams, n_list: List[int], points, **extra) -> SweepConfig:
        config = self.get_config()
        return SweepConfig(
            d=params.d, a=params.a, b=params.b,
            n_list=n_list,
            points=points,
            mode=config.oracle.mode,
            bits=config.oracle.highprec_bits,
            max_bits=config.oracle.highprec_max_bits,
            highprec_max_n=config.oracle.highprec_max_n,
            delta=config.asymptotics.delta,
            format=config.output.format,
            **extra,
        )

    def zeros(self, params: RecurrenceParams, n: int) -> ZeroSet:
        settings = self.get_config().zeros
        return find_zeros(params, n, tol=settings.tol, maxiter=settings.maxiter, seed=settings.seed,
                          certification_threshold=settings.certification_threshold)

    def curve(self, A: float) -> CurvePolyline:
        settings = self.get_config().curve
        return get_curve_manager().get_curve(A, settings.points, settings.tol)

    def figure(self, params: RecurrenceParams, n: int, out_dir: Optional[str] = None) -> Dict[str, Path]:
        config = self.get_config()
        manager = FigureManager(out_dir or config.output.directory, config)
        return manager.emit_figure_data(params, n)

    def selftest(self) -> List[CheckResult]:
        return SelftestManager().run()
