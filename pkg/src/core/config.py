"""
Configuration management with Pydantic Settings.
Every knob can be overridden through HAMMING_SPECTRA_* environment variables or a .env file.
"""
import os
from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.exceptions import ConfigurationError

# Hard ceilings for the brute-force oracles; above these a single run takes hours.
Z2_ORACLE_CEILING = 24
Z4_ORACLE_CEILING = 16
THREADS_CEILING = 256


class Settings(BaseSettings):
    """Application settings with environment-based configuration."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="HAMMING_SPECTRA_",
        case_sensitive=False,
        extra="ignore",
    )

    # Environment
    environment: Literal["dev", "prod", "test"] = Field(default="dev")
    debug: bool = Field(default=False)

    # Application
    app_name: str = Field(default="hamming-spectra")
    app_version: str = Field(default="0.1.0")
    schema_version: str = Field(default="hamming_spectra.output.v1")

    # Exact arithmetic
    factorial_cache_cap: int = Field(default=256, ge=16, le=100_000)
    log_space_threshold: int = Field(default=40, ge=4, le=10_000)

    # Brute-force oracles
    z2_oracle_cap: int = Field(default=16, ge=1)
    z4_oracle_cap: int = Field(default=14, ge=2)
    oracle_chunk_size: int = Field(default=65_536, ge=1_024, le=4_194_304)
    random_seed: int = Field(default=20240601)

    # Parallel scans (0 = one worker per CPU)
    threads: int = Field(default=1, ge=0)

    # Table rendering
    table_decimals: int = Field(default=3, ge=0, le=12)
    default_alphas: list[float] = Field(
        default=[round(0.01 * k, 2) for k in range(1, 18)],
    )

    # Monitoring
    metrics_enabled: bool = Field(default=True)

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING"
    )
    log_format: Literal["json", "console"] = Field(default="json")

    @field_validator("default_alphas", mode="before")
    @classmethod
    def parse_alphas(cls, v: str | list[float]) -> list[float]:
        """Parse a comma-separated alpha grid."""
        if isinstance(v, str):
            return [float(item.strip()) for item in v.split(",") if item.strip()]
        return v

    def effective_workers(self) -> int:
        """
        Resolve the worker count used by sharded scans.

        Returns:
            int: Number of worker processes (at least 1)
        """
        if self.threads == 0:
            return os.cpu_count() or 1
        return self.threads

    def validate_limits(self) -> None:
        """Validate limits that make desk-scale runs infeasible."""
        errors = []

        if self.z2_oracle_cap > Z2_ORACLE_CEILING:
            errors.append(f"Z2_ORACLE_CAP must be at most {Z2_ORACLE_CEILING}")

        if self.z4_oracle_cap > Z4_ORACLE_CEILING:
            errors.append(f"Z4_ORACLE_CAP must be at most {Z4_ORACLE_CEILING}")

        if self.threads > THREADS_CEILING:
            errors.append(f"THREADS must be at most {THREADS_CEILING}")

        if any(not 0.0 < alpha < 0.5 for alpha in self.default_alphas):
            errors.append("DEFAULT_ALPHAS must lie in (0, 1/2)")

        if self.environment == "prod" and self.debug:
            errors.append("DEBUG must be False in production")

        if errors:
            raise ConfigurationError(
                "Settings validation failed:\n" + "\n".join(f"- {e}" for e in errors),
                details={"errors": errors},
            )


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings: Application settings

    Raises:
        ConfigurationError: If a limit is violated
    """
    settings = Settings()
    settings.validate_limits()
    return settings


# Global settings instance
settings = get_settings()
