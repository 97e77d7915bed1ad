"""BS downlink power strategies (Strategy Pattern).

- fixed: equal split ``P_A / K`` regardless of the channels
- water-filling: sum-rate best response to the current contamination
"""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, LargeScale, PowerAllocation
from mimo_pcsim.domain.interfaces import PowerStrategy
from mimo_pcsim.rates.downlink import effective_noise

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


class PowerMode(Enum):
    """可用的 BS 功率策略。"""

    FIXED = "fixed"
    WATER_FILLING = "water-filling"


def uniform_allocation(config: SystemConfig) -> PowerAllocation:
    return PowerAllocation(np.full(config.users, config.bs_power / config.users))


def water_levels(ls: LargeScale, attack: AttackVector, config: SystemConfig) -> FloatArray:
    """Inverse channel quality ``phi_k / (M theta_k^2)`` of every user."""
    return effective_noise(ls, attack, config) / (config.antennas * ls.theta**2)


def pour(levels: npt.ArrayLike, total: float) -> tuple[FloatArray, float]:
    """Fill ``[eta - level_k]^+`` up to ``total``.

    The level is bracketed by a root search and then recomputed exactly from the
    active set, so the allocation sums to ``total`` to rounding.

    Returns:
        Allocation and water level ``eta``.
    """
    c = np.asarray(levels, dtype=np.float64)
    floor = float(c.min())

    def excess(eta: float) -> float:
        return float(np.maximum(eta - c, 0.0).sum() - total)

    eta = brentq(excess, floor, floor + total, xtol=1e-12 * max(1.0, abs(floor) + total))
    active = c < eta
    eta = (total + c[active].sum()) / np.count_nonzero(active)
    power = eta - c
    # ties exactly at the level get nothing
    return np.where(power > 0.0, power, 0.0), float(eta)


def water_filling(ls: LargeScale, attack: AttackVector, config: SystemConfig) -> PowerAllocation:
    """Sum-rate maximizing split of P_A against the large-M rates under ``attack``."""
    power, eta = pour(water_levels(ls, attack, config), config.bs_power)
    logger.debug(
        "Water-filling", extra={"level": eta, "active": int(np.count_nonzero(power))}
    )
    return PowerAllocation(power)


class FixedPower(PowerStrategy):
    """Equal split, blind to the channels."""

    name = PowerMode.FIXED.value

    def allocate(
        self, ls: LargeScale, attack: AttackVector, config: SystemConfig
    ) -> PowerAllocation:
        return uniform_allocation(config)


class WaterFillingPower(PowerStrategy):
    """Water-filling on the estimated (possibly contaminated) channel statistics."""

    name = PowerMode.WATER_FILLING.value

    def allocate(
        self, ls: LargeScale, attack: AttackVector, config: SystemConfig
    ) -> PowerAllocation:
        return water_filling(ls, attack, config)


def get_power_strategy(mode: PowerMode | str = PowerMode.FIXED) -> PowerStrategy:
    """Power strategy factory.

    Raises:
        ValueError: Unknown mode.
    """
    mode = PowerMode(mode)
    if mode == PowerMode.FIXED:
        return FixedPower()
    elif mode == PowerMode.WATER_FILLING:
        return WaterFillingPower()
    else:
        raise ValueError(f"Unknown power mode: {mode}")
