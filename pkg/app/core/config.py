import logging
import sys
from typing import List
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache


class Settings(BaseSettings):
    """
    Engine configuration settings (Pydantic v2 style)
    """

    # Application settings
    APP_NAME: str = "Loop Spinor Verification Engine"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    ENVIRONMENT: str = "production"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Reports
    REPORT_SCHEMA_VERSION: str = "1"
    DEFAULT_SEED: int = 0

    # Enumeration caps
    WEYL_GROUP_CAP: int = 10_000
    AFFINE_MODE_CAP: int = 64
    AFFINE_ELEMENT_CAP: int = 5_000

    # Numerical tolerances
    CLIFFORD_TOL: float = 1e-12
    IMPLEMENTER_TOL: float = 1e-10
    ORTHOGONALITY_TOL: float = 1e-10
    SPECTRAL_TOL: float = 1e-10
    OPERATOR_TOL: float = 1e-12
    RANK_TOL: float = 1e-8
    KERNEL_TOL: float = 1e-10
    SYMPLECTIC_TOL: float = 1e-9
    LEVEL_TOL: float = 1e-9
    COCYCLE_TOL: float = 1e-10
    GROUP_TOL: float = 1e-10

    # Convergence order band for finite-difference checks
    ORDER_BAND_LOW: float = 1.7
    ORDER_BAND_HIGH: float = 2.3

    # Relative spread allowed in the s = 1/2 singular-value band
    BAND_VARIATION_MAX: float = 0.2

    # Suite runner
    MAX_CONCURRENT_CHECKS: int = 4

    # HTTP surface
    CORS_ORIGINS: List[str] = ["http://localhost:3000"]

    # ✅ Pydantic v2 config
    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore"
    )

    @field_validator('LOG_LEVEL')
    @classmethod
    def validate_log_level(cls, v):
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in valid_levels:
            raise ValueError(f'LOG_LEVEL must be one of: {valid_levels}')
        return v.upper()

    @field_validator('ORDER_BAND_HIGH')
    @classmethod
    def validate_order_band(cls, v, info):
        low = info.data.get('ORDER_BAND_LOW', 0.0)
        if v <= low:
            raise ValueError('ORDER_BAND_HIGH must exceed ORDER_BAND_LOW')
        return v


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()


def configure_logging() -> None:
    """Route all engine logging to stderr; stdout is reserved for JSON reports."""
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )
