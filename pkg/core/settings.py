"""
Process-level settings read from the environment (DVQA_* variables).
"""
from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class DvqaSettings(BaseSettings):
    """Environment-backed settings shared by the API, CLI and workflows."""
    model_config = SettingsConfigDict(env_prefix="DVQA_", extra="ignore")

    workers: int = Field(default=1, ge=1, description="Upper bound on concurrent optimization processes")
    log_level: str = Field(default="INFO", description="Root logger level used by the CLI")
    results_dir: Path = Field(default=Path("results"), description="Default directory for result files")


@lru_cache(maxsize=1)
def get_settings() -> DvqaSettings:
    """Get or create the process-wide settings instance."""
    return DvqaSettings()
