"""Application settings using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# 找到專案根目錄的 .env 檔案
_PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent.parent
_ENV_FILE = _PROJECT_ROOT / ".env"


class Settings(BaseSettings):
    """Simulator defaults loaded from environment variables (prefix ``MIMO_PCSIM_``)."""

    model_config = SettingsConfigDict(
        env_prefix="MIMO_PCSIM_",
        env_file=str(_ENV_FILE) if _ENV_FILE.exists() else ".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Reproducibility
    seed: int = Field(default=20240101, ge=0, description="Root seed for every derived RNG stream")

    # Scale presets
    desk_antennas: int = Field(default=256, ge=1, description="BS antennas at desk scale")
    desk_realizations: int = Field(default=500, ge=1, description="Monte Carlo draws at desk scale")
    paper_antennas: int = Field(default=1000, ge=1, description="BS antennas at full scale")
    paper_realizations: int = Field(
        default=100_000, ge=1, description="Monte Carlo draws at full scale"
    )
    workers: int = Field(default=4, ge=1, description="Concurrent realization workers")

    # Radio (dBm, converted once by SystemConfig.from_settings)
    bs_power_dbm: float = Field(default=46.0, description="Alice average transmit power")
    pilot_power_dbm: float = Field(default=20.0, description="Per-user pilot power")
    attacker_power_dbm: float = Field(default=30.0, description="Attacker average power")
    noise_floor_dbm: float = Field(default=-101.0, description="Noise floor over the band")
    bandwidth_hz: float = Field(default=20e6, gt=0)

    # System
    users: int = Field(default=10, ge=1, description="Number of Bobs K")
    pilot_length: int = Field(default=10, ge=1, description="Pilot length L in symbols")
    path_loss_exponent: float = Field(default=3.522, gt=0)
    path_loss_constant: float = Field(default=3.0682e-5, gt=0)

    # Geometry (meters)
    d_min: float = Field(default=10.0, gt=0)
    d_max: float = Field(default=750.0, gt=0)
    d_max_attacker: float = Field(default=250.0, gt=0)

    # Frame
    pilot_duration: float = Field(default=1.0, gt=0, description="t_p")
    data_duration: float = Field(default=1.0, gt=0, description="t_d")

    # Secrecy
    leakage_cap: float = Field(
        default=60.0, gt=0, description="Saturation value for interference-free leakage (bit/s/Hz)"
    )

    # Output
    output_dir: Path = Field(default=Path("./results"))

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="INFO")


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
