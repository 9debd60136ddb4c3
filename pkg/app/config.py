"""
Configuration settings for the Poisson centralizer toolkit.
Manages environment variables, resource caps and report options.
"""
from pydantic import BaseSettings, Field


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # Logging
    debug: bool = False
    log_level: str = "INFO"

    # Resource caps
    cap_mb: int = Field(64, ge=1, description="Memory bound for exact elimination, in MB")
    max_ambient_dimension: int = Field(20000, ge=1)
    centralizer_max_n: int = 3
    quantum_max_n: int = 3
    weyl_max_n: int = 5
    normal_form_cache_size: int = Field(65536, ge=1, description="Words memoized by the quantum rewriting")

    # Sampling
    rank_samples: int = Field(200, ge=1)
    rank_entry_bound: int = Field(5, ge=1)
    default_seed: int = 0

    # Reports
    record_timing: bool = False
    schema_version: str = "1"

    class Config:
        env_file = ".env"
        env_prefix = "POISSON_KIT_"
        case_sensitive = False


# Global settings instance
settings = Settings()
