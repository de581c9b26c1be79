"""Configuration settings for the cubic-orders library, CLI and HTTP service."""
from functools import lru_cache
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with local defaults."""

    # Application
    APP_NAME: str = "cubic-orders"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False
    HOST: str = "127.0.0.1"
    PORT: int = 8000

    # Logging
    LOG_LEVEL: str = Field(
        default="WARNING",
        description="Root logging level for the CLI and the HTTP service"
    )
    LOG_FILE: Optional[str] = Field(
        default=None,
        description="Optional log file; logs go to stderr only when unset"
    )

    # Enumeration
    N_SCAN_MAX: int = Field(
        default=6,
        ge=0,
        description="Largest n for which the beta-scanning classifiers run"
    )

    # Monogenicity search
    SEARCH_BOUND: int = Field(
        default=50,
        ge=1,
        description="Default box bound H for the witness search"
    )
    TM_HEIGHT: int = Field(
        default=200,
        ge=0,
        description="Default box bound for the Thue-Mahler solution search"
    )
    TM_NMAX: int = Field(
        default=12,
        ge=0,
        description="Largest exponent N accepted in kU^3 - hV^3 = +-p^N"
    )

    # Workers
    CUBIC_ORDERS_THREADS: int = Field(
        default=0,
        ge=0,
        description="Worker cap for partitioned scans (0 = one per CPU)"
    )
    PARALLEL_MIN_TASKS: int = Field(
        default=64,
        ge=1,
        description="Below this many tasks the work stays in-process"
    )

    # HTTP API
    API_MAX_N: int = Field(
        default=12,
        ge=0,
        description="Largest n or n_max accepted by the HTTP endpoints"
    )
    RATE_LIMIT: str = "60/minute"
    RATE_LIMIT_STRICT: str = "10/minute"
    RATE_LIMIT_STORAGE_URI: str = "memory://"

    # Pydantic v2 config
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding='utf-8',
        case_sensitive=True,
        extra='ignore'
    )

    @field_validator("LOG_LEVEL")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


@lru_cache()
def get_settings() -> Settings:
    """Get application settings."""
    return Settings()


# Global settings
settings = get_settings()
