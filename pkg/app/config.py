"""
Global configuration for the herd testing analysis

Two layers:
1. Environment settings (HERDTEST_* variables, optionally from a .env file):
   logging and default output location.
2. Model defaults: the herd, test and cost parameters plus the prior and
   critical-cost grids. A run config that omits a field falls back to these.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv
from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

# Herd, test and cost model
HERD_SIZE = 250
SENSITIVITY = 0.9999
SPECIFICITY = 0.999
COST_COEFFS = (1000.0, -2000.0, 1000.0)
OUTBREAK_COST = 10_000_000.0
TERMINATION_COST_PER_ANIMAL = 400.0

# Bayesian analysis
PRIOR_MEANS = (0.0002, 0.0004, 0.0008, 0.0016)
PRIOR_SIGMA = 0.001
EXCEEDANCE_DECISION = 10
EXCEEDANCE_MEAN = 0.0016
EXCEEDANCE_STEP = 1_000.0
EXCEEDANCE_LIMIT = 1_200_000.0
SENSITIVITY_MEANS = (0.0002, 0.0004, 0.0008, 0.0016, 0.0032)
SENSITIVITY_STRENGTHS = (200.0, 400.0, 800.0, 1600.0, 3200.0)
# the exceedance probability jumps at c(10) + t(n) = 181 000
SENSITIVITY_THRESHOLD = 182_000.0

# Info-gap and imprecise analyses
CRITICAL_COSTS = (0.5e6, 1.0e6, 1.5e6, 2.0e6, 2.5e6, 3.0e6, 3.5e6, 4.0e6)
CURVE_DECISIONS = (1, 15, 30)
CURVE_COSTS = tuple(k * 100_000.0 for k in range(1, 72))

# Loss profiles
LOSS_PROFILE_DECISIONS = (10, 20)
LOSS_PROFILE_MAX_DISEASED = 30
EXPECTED_LOSS_RATES = (0.0001, 0.00025, 0.0005, 0.001)

# Numerical settings
DECISION_POOL = 30
H_MAX = 0.05
REFERENCE_GRID_POINTS = 2001
INNER_GRID_POINTS = 64
BISECTION_TOL = 1e-9
DERIVATIVE_STEPS = (1e-2, 1e-4, 1e-6)
DERIVATIVE_FLOOR = 1e-9
H_PRIME_POINTS = 20


class AppSettings(BaseSettings):
    """Process-level settings read from the environment"""

    model_config = SettingsConfigDict(env_prefix="HERDTEST_", extra="ignore")

    log_level: str = "INFO"
    log_dir: Path = Path("logs")
    log_to_file: bool = True
    output_dir: Path = Path("output")

    @property
    def log_file(self) -> Path:
        """Path of the rotating log file"""
        return self.log_dir / "herdtest.log"

    def describe(self) -> Dict[str, Any]:
        """Settings as a plain dict for the startup banner"""
        return {
            'log_level': self.log_level,
            'log_file': str(self.log_file) if self.log_to_file else 'disabled',
            'output_dir': str(self.output_dir),
        }

    def __str__(self) -> str:
        return f"Settings(log_level={self.log_level}, output_dir={self.output_dir})"


# Global instance - read once on import
settings = AppSettings()


def get_settings() -> AppSettings:
    """Get the process-wide settings"""
    return settings


def get_output_dir() -> Path:
    """Default directory for CSV/JSON artefacts"""
    return settings.output_dir


def load_run_config(path: Optional[Union[str, Path]] = None):
    """
    Load and validate a run configuration document.

    Args:
        path: JSON file to read. None returns the all-defaults configuration.

    Returns:
        RunConfig: the validated configuration

    Raises:
        ConfigError: the file is unreadable, not JSON, or fails validation
    """
    from .schemas import RunConfig

    if path is None:
        logger.info("No config file given, using built-in defaults")
        return RunConfig()

    config_path = Path(path)
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {config_path}: {e}") from e

    try:
        run_config = RunConfig.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"Invalid config file {config_path}:\n{e}") from e

    logger.info(f"Loaded run config from {config_path}")
    return run_config
