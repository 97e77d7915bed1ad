"""Scalar system constants in linear, noise-normalized units."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from mimo_pcsim.domain.exceptions import ConfigurationError

if TYPE_CHECKING:
    from mimo_pcsim.config.settings import Settings


def dbm_to_linear(p_dbm: float, noise_floor_dbm: float = -101.0) -> float:
    """Convert a dBm power to a linear value relative to unit noise variance."""
    return float(10.0 ** ((p_dbm - noise_floor_dbm) / 10.0))


class SystemConfig(BaseModel):
    """All scalar constants of one single-cell massive-MIMO setup.

    Powers are linear and already divided by the noise power, so every rate formula
    uses a literal ``+ 1`` for the noise term.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    antennas: int = Field(ge=1, description="M")
    users: int = Field(ge=1, description="K")
    pilot_length: int = Field(ge=1, description="L")
    path_loss_exponent: float = Field(gt=0, description="gamma")
    path_loss_constant: float = Field(gt=0, description="A")
    bs_power: float = Field(gt=0, description="P_A")
    pilot_power: tuple[float, ...] = Field(description="P_k per user")
    attacker_power: float = Field(ge=0, description="P_J; zero means a silent attacker")
    d_min: float = Field(gt=0)
    d_max: float = Field(gt=0)
    d_max_attacker: float = Field(gt=0)
    bandwidth_hz: float = Field(default=20e6, gt=0)
    pilot_duration: float = Field(default=1.0, gt=0)
    data_duration: float = Field(default=1.0, gt=0)
    leakage_cap: float = Field(default=60.0, gt=0)

    @model_validator(mode="before")
    @classmethod
    def _broadcast_pilot_power(cls, data: Any) -> Any:
        # a scalar (or single-entry) pilot power applies to every user
        if isinstance(data, dict) and "pilot_power" in data:
            power = data["pilot_power"]
            if np.isscalar(power):
                power = (power,)
            power = tuple(float(p) for p in power)
            if len(power) == 1:
                power = power * int(data.get("users", 1))
            data = {**data, "pilot_power": power}
        return data

    @field_validator("pilot_power")
    @classmethod
    def _positive_pilot_power(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(p <= 0 for p in value):
            raise ValueError("pilot powers must be positive")
        return value

    @model_validator(mode="after")
    def _check_invariants(self) -> SystemConfig:
        if len(self.pilot_power) != self.users:
            raise ValueError(
                f"pilot_power has {len(self.pilot_power)} entries for {self.users} users"
            )
        if self.d_min > self.d_max:
            raise ValueError(f"d_min ({self.d_min}) exceeds d_max ({self.d_max})")
        if self.d_min > self.d_max_attacker:
            raise ValueError(
                f"d_min ({self.d_min}) exceeds d_max_attacker ({self.d_max_attacker})"
            )
        return self

    @classmethod
    def build(cls, **values: Any) -> SystemConfig:
        """Validate ``values`` and raise ConfigurationError on failure."""
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(str(exc)) from exc

    @classmethod
    def from_settings(
        cls,
        settings: Settings,
        antennas: int | None = None,
        **overrides: Any,
    ) -> SystemConfig:
        """Build the linear configuration from dBm settings.

        Args:
            settings: Environment settings carrying the dBm radio defaults.
            antennas: BS antenna count; defaults to the desk-scale preset.
            **overrides: Field values replacing the derived ones.

        Returns:
            SystemConfig: Validated configuration.
        """
        floor = settings.noise_floor_dbm
        values: dict[str, Any] = {
            "antennas": antennas if antennas is not None else settings.desk_antennas,
            "users": settings.users,
            "pilot_length": settings.pilot_length,
            "path_loss_exponent": settings.path_loss_exponent,
            "path_loss_constant": settings.path_loss_constant,
            "bs_power": dbm_to_linear(settings.bs_power_dbm, floor),
            "pilot_power": dbm_to_linear(settings.pilot_power_dbm, floor),
            "attacker_power": dbm_to_linear(settings.attacker_power_dbm, floor),
            "d_min": settings.d_min,
            "d_max": settings.d_max,
            "d_max_attacker": settings.d_max_attacker,
            "bandwidth_hz": settings.bandwidth_hz,
            "pilot_duration": settings.pilot_duration,
            "data_duration": settings.data_duration,
            "leakage_cap": settings.leakage_cap,
        }
        values.update(overrides)
        return cls.build(**values)

    def with_overrides(self, **changes: Any) -> SystemConfig:
        """Return a validated copy with ``changes`` applied."""
        values = self.model_dump()
        if "users" in changes and "pilot_power" not in changes:
            values["pilot_power"] = (self.pilot_power[0],)
        values.update(changes)
        return self.build(**values)

    @property
    def pilot_powers(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.pilot_power, dtype=np.float64)

    @property
    def power_ratio(self) -> npt.NDArray[np.float64]:
        """u_k = P_J / P_k."""
        return self.attacker_power / self.pilot_powers

    @property
    def pilot_noise(self) -> npt.NDArray[np.float64]:
        """Per-entry variance 1/(P_k L) of the projected estimation noise."""
        return 1.0 / (self.pilot_powers * self.pilot_length)

    @property
    def duty_cycle(self) -> float:
        return self.data_duration / (self.pilot_duration + self.data_duration)

    @property
    def annulus_span(self) -> float:
        """D_max^2 - D_min^2."""
        return self.d_max**2 - self.d_min**2
