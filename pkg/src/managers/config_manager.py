import json
import os
from typing import Any, Dict, Optional
from pydantic import BaseModel, Field, validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path
import logging

from ..arithmetic.backends import OracleMode

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class AsymptoticsSettings(BaseModel):
    delta: float = 0.1

    @validator('delta')
    def validate_delta(cls, v):
        if v <= 0:
            raise ValueError('Region margin delta must be positive')
        return v


class OracleSettings(BaseModel):
    mode: OracleMode = OracleMode.AUTO
    highprec_bits: int = 256
    highprec_max_bits: int = 4096
    highprec_max_n: int = 1600

    @validator('highprec_bits')
    def validate_bits(cls, v):
        if v < 53:
            raise ValueError('High-precision oracle needs at least 53 bits')
        return v

    @validator('highprec_max_bits')
    def validate_max_bits(cls, v, values):
        if v < values.get('highprec_bits', 53):
            raise ValueError('highprec_max_bits must not be below highprec_bits')
        return v

    @validator('highprec_max_n')
    def validate_max_n(cls, v):
        if v < 0:
            raise ValueError('highprec_max_n must be non-negative')
        return v


class CurveSettings(BaseModel):
    points: int = 512
    tol: float = 1e-10

    @validator('points')
    def validate_points(cls, v):
        if v < 16:
            raise ValueError('Curve needs at least 16 points')
        return v

    @validator('tol')
    def validate_tol(cls, v):
        if v <= 0:
            raise ValueError('Curve tolerance must be positive')
        return v


class ZeroSettings(BaseModel):
    tol: float = 1e-10
    maxiter: int = 500
    seed: int = 20240611
    endpoint_exclusion: float = 0.3
    certification_threshold: float = 1e-6

    @validator('tol', 'endpoint_exclusion', 'certification_threshold')
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError('Zero finder thresholds must be positive')
        return v

    @validator('maxiter')
    def validate_maxiter(cls, v):
        if v < 1:
            raise ValueError('maxiter must be at least 1')
        return v


class OutputSettings(BaseModel):
    directory: str = "./output"
    format: str = "csv"

    @validator('format')
    def validate_format(cls, v):
        if v not in OUTPUT_FORMATS:
            raise ValueError(f'Output format must be one of {OUTPUT_FORMATS}')
        return v


class Logging(BaseModel):
    level: str = "INFO"
    log_file: str = ""

    @validator('level')
    def validate_level(cls, v):
        v = v.upper()
        if v not in LOG_LEVELS:
            raise ValueError(f'Log level must be one of {LOG_LEVELS}')
        return v


class Config(BaseModel):
    asymptotics: AsymptoticsSettings = AsymptoticsSettings()
    oracle: OracleSettings = OracleSettings()
    curve: CurveSettings = CurveSettings()
    zeros: ZeroSettings = ZeroSettings()
    output: OutputSettings = OutputSettings()
    logging: Logging = Logging()

    def echo(self) -> Dict[str, Any]:
        """Plain-JSON view written into output headers."""
        return json.loads(self.model_dump_json())


class RuntimeSettings(BaseSettings):
    """Process-level knobs read from the environment (PRASYMP_*)."""
    model_config = SettingsConfigDict(env_prefix="PRASYMP_", env_file=".env", extra="ignore")

    threads: int = Field(default=1, ge=1)


class ConfigManager:
    def __init__(self, config_path: str = "config/config.json"):
        self.config_path = Path(config_path)
        self._config: Optional[Config] = None

    def load_config(self) -> Config:
        try:
            if not self.config_path.exists():
                raise FileNotFoundError(f"Config file not found: {self.config_path}")

            with open(self.config_path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)

            self._config = Config(**config_data)
            logger.info(f"Configuration loaded successfully from {self.config_path}")
            return self._config

        except Exception as e:
            logger.error(f"Failed to load configuration: {e}")
            raise

    def load_or_default(self) -> Config:
        """Defaults when the file is missing; a present but invalid file still raises."""
        if not self.config_path.exists():
            logger.warning(f"Config file {self.config_path} not found, using built-in defaults")
            self._config = Config()
            return self._config
        return self.load_config()

    def save_config(self, config: Config) -> None:
        try:
            os.makedirs(self.config_path.parent, exist_ok=True)

            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(config.echo(), f, indent=2, ensure_ascii=False)

            self._config = config
            logger.info(f"Configuration saved successfully to {self.config_path}")

        except Exception as e:
            logger.error(f"Failed to save configuration: {e}")
            raise

    def get_config(self) -> Config:
        if self._config is None:
            return self.load_config()
        return self._config

    def apply_overrides(self, **overrides: Any) -> Config:
        """Copy of the config with dotted-key overrides (e.g. 'curve.points') applied; None skips."""
        data = self.get_config().echo()
        for key, value in overrides.items():
            if value is None:
                continue
            section, _, name = key.partition('.')
            if section not in data or name not in data[section]:
                raise KeyError(f"Unknown config key: {key}")
            data[section][name] = value
        self._config = Config(**data)
        return self._config

    def create_directories(self) -> None:
        config = self.get_config()

        directories = [config.output.directory, os.path.dirname(config.logging.log_file)]
        for directory in directories:
            if directory and not os.path.exists(directory):
                os.makedirs(directory, exist_ok=True)
                logger.info(f"Created directory: {directory}")
