from functools import lru_cache
from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings

# Repository root: shared/utils/config.py -> parents[2]
_REPO_ROOT = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    """Application settings."""

    # Application
    app_name: str = "Sato-Tate Moments"
    log_level: str = "WARNING"
    log_json: bool = False

    # Catalog
    catalog_dir: Path = _REPO_ROOT / "data" / "catalog"

    # Parallelism shared by the engine and the analyzer
    max_workers: int = 4

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        return v

    @field_validator("max_workers")
    @classmethod
    def positive_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_workers must be at least 1")
        return v

    model_config = {
        "env_prefix": "STM_",
        "case_sensitive": False,
        "extra": "ignore",
    }


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()
