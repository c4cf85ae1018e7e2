import os
from pathlib import Path
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


BASE_DIR = Path(__file__).parent.parent.parent


class BenchDefaults(BaseModel):
    replicates: int = Field(default=20, ge=1)
    m: int = Field(default=100, ge=1)
    alpha_grid: list[float] = [0.01, 0.05, 0.1]
    noise_trials: int = Field(default=10, ge=1)


class Settings(BaseSettings):
    ALPHA: float = Field(default=0.01, gt=0, le=0.5)
    THREADS: int | None = Field(default=None, ge=1)
    LOG_LEVEL: str = "WARNING"
    MAX_REFINE_DEPTH: int = 50
    MIN_SPLIT_SIZE: int = 4
    DENSITY_FLOOR: float = 1e-300
    WEIGHT_TOLERANCE: float = 1e-12
    BENCH: BenchDefaults = BenchDefaults()

    @property
    def WORKERS(self) -> int:
        return self.THREADS or os.cpu_count() or 1

    model_config = SettingsConfigDict(
        env_file=BASE_DIR / ".env",
        env_prefix="UNISPLIT_",
        env_nested_delimiter="__",
        extra="ignore",
    )


settings = Settings()
