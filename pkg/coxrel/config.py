"""
Runtime configuration read from COXREL_* environment variables
"""

import os
from functools import lru_cache

from pydantic import BaseModel, Field, field_validator

ENV_PREFIX = "COXREL_"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseModel):
    """Validated settings; every field maps to COXREL_<FIELD_NAME>"""

    log_level: str = "WARNING"
    numeric_tolerance: float = Field(default=1e-9, gt=0)
    max_oracle_cores: int = Field(default=10, ge=0)
    minimal_hyperbolic_bound: int = Field(default=10, ge=1)

    @field_validator("log_level")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        value = value.strip().upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {value}")
        return value

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(ENV_PREFIX + name.upper())
            if raw is not None and raw.strip():
                values[name] = raw
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def reset_settings():
    """Drop the cached settings so the next call re-reads the environment"""
    get_settings.cache_clear()
