import logging
import os
from pathlib import Path
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict


logger = logging.getLogger(__name__)

load_dotenv()


class Settings(BaseSettings):
    BASE_DIR: Path = Path(__file__).parent.parent
    TOLERANCE: float = 1e-9
    RANK_TOLERANCE: float = 1e-7
    NORM_TOLERANCE: float = 1e-9
    MAX_COMPOSITE_DIMENSION: int = 2 ** 18
    UNITARITY_CHECK_MAX_DIMENSION: int = 1024
    MAX_MODULUS: int = 2 ** 31
    DEFAULT_SEED: int = 0
    SIMON_TRIALS_PER_BIT: int = 10
    SHOR_MAX_ROUNDS: int = 20
    OUTPUT_FORMAT: str = "text"
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=str(BASE_DIR / ".env"),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def validate_settings(self):
        problems = []
        for field in ["TOLERANCE", "RANK_TOLERANCE", "NORM_TOLERANCE"]:
            if getattr(self, field) <= 0:
                problems.append(f"{field} must be positive")
        if self.RANK_TOLERANCE < self.TOLERANCE:
            problems.append("RANK_TOLERANCE must not be tighter than TOLERANCE")
        if self.MAX_COMPOSITE_DIMENSION < 4:
            problems.append("MAX_COMPOSITE_DIMENSION must be at least 4")
        if self.OUTPUT_FORMAT not in ("text", "json"):
            problems.append("OUTPUT_FORMAT must be 'text' or 'json'")
        if problems:
            logger.error(f"Invalid settings: {'; '.join(problems)}")
            raise ValueError(f"Invalid settings: {'; '.join(problems)}")


class TestingSettings(Settings):
    DEFAULT_SEED: int = 1234
    LOG_LEVEL: str = "WARNING"


@lru_cache()
def get_settings() -> Settings:
    """
    Retrieve the simulator settings based on the environment.

    Depending on the ENVIRONMENT variable (default: 'development'), returns an instance of either
    `Settings` or `TestingSettings`. Both classes inherit from `pydantic_settings.BaseSettings`
    and can be overridden through environment variables or a `.env` file next to the package.

    The returned object includes the following key parameters:
    - TOLERANCE: Entrywise and norm tolerance for equality checks (default: 1e-9).
    - RANK_TOLERANCE: Residual norm below which Gram-Schmidt discards a vector (default: 1e-7).
    - NORM_TOLERANCE: Guard used when constructing states and unitaries.
    - MAX_COMPOSITE_DIMENSION: Largest composite register space a layout may describe.
    - UNITARITY_CHECK_MAX_DIMENSION: Largest dense unitary verified at construction.
    - MAX_MODULUS: Largest modulus accepted by the modular arithmetic helpers.
    - DEFAULT_SEED: Seed used when the caller does not supply one.
    - SIMON_TRIALS_PER_BIT: Default Simon trial budget per input bit.
    - SHOR_MAX_ROUNDS: Default number of candidate-and-test rounds for factoring.
    - OUTPUT_FORMAT: Report format for the command line ('text' or 'json').
    - LOG_LEVEL: Logging level applied by the entry point.

    :return: An instance of `Settings` (for development) or `TestingSettings` (for testing).
    :rtype: BaseSettings
    :raises ValidationError: If environment overrides cannot be parsed.
    :raises ValueError: If the settings are inconsistent.
    """
    environment = os.getenv("ENVIRONMENT", "development")
    logger.info(f"Loading settings for environment: {environment}")

    try:
        if environment == "testing":
            settings = TestingSettings()
        else:
            settings = Settings()
        settings.validate_settings()
        return settings
    except ValidationError as e:
        logger.error(f"Settings validation error: {e}")
        raise
    except ValueError as e:
        logger.error(f"Settings error: {e}")
        raise


def resolve_tolerance(tolerance: float | None = None) -> float:
    return get_settings().TOLERANCE if tolerance is None else tolerance


def resolve_rank_tolerance(tolerance: float | None = None) -> float:
    return get_settings().RANK_TOLERANCE if tolerance is None else tolerance
