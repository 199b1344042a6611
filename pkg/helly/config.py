"""Runtime configuration read from the environment."""
import logging
import os
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from helly.utils.validation import ConfigError

logger = logging.getLogger(__name__)

# Brute-force limits of the exact routines.
MAX_EXACT_INDEPENDENCE_N = 20
MAX_EXACT_MATCHING_N = 24

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]

ENV_VARS = {
    "max_exact_n": "HELLY_MAX_EXACT_N",
    "jobs": "HELLY_JOBS",
    "coeff_bound": "HELLY_COEFF_BOUND",
    "max_retries": "HELLY_MAX_RETRIES",
    "log_level": "HELLY_LOG_LEVEL",
}


class Settings(BaseModel):
    """Defaults for the library and CLI; CLI flags override these."""
    max_exact_n: int = Field(25, ge=0, description="Largest class size maximized exactly")
    jobs: int = Field(1, ge=1, description="Worker processes for tuple evaluation")
    coeff_bound: int = Field(10_000, ge=1, description="Hyperplane coefficients are drawn from [-B, B]")
    max_retries: int = Field(100, ge=1, description="Rejection sampling budget per hyperplane")
    log_level: LogLevel = Field("WARNING", description="Root log level for the CLI")


def load_settings() -> Settings:
    """
    Build settings from HELLY_* environment variables.

    Raises:
        ConfigError: Naming every variable whose value is rejected
    """
    raw = {field: os.environ[name] for field, name in ENV_VARS.items() if name in os.environ}
    if "log_level" in raw:
        raw["log_level"] = raw["log_level"].upper()
    try:
        return Settings.model_validate(raw)
    except ValidationError as exc:
        problems = []
        for error in exc.errors():
            field = error["loc"][0]
            problems.append(f"{ENV_VARS[field]}={os.environ[ENV_VARS[field]]!r}: {error['msg']}")
        raise ConfigError("Invalid environment: " + "; ".join(problems)) from exc


try:
    settings = load_settings()
except ConfigError as exc:
    # The CLI reports this again and exits; library callers fall back to defaults.
    logger.warning("%s; using defaults", exc)
    settings = Settings()
