"""Information leakage towards the attacker and individual secrecy rates."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from mimo_pcsim.channel.realization import attacker_channel
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import (
    AttackVector,
    ChannelRealization,
    EstimatedChannels,
    LargeScale,
    PowerAllocation,
    SecrecyReport,
)
from mimo_pcsim.rates.downlink import asymptotic_rates, effective_noise

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def leakage_signal(
    ls: LargeScale, attack: AttackVector, pa: PowerAllocation, config: SystemConfig
) -> FloatArray:
    """Per-antenna eavesdropped power S_k = P_k alpha_k u_k theta_J^2 / phi_k."""
    phi = effective_noise(ls, attack, config)
    return pa.pd * attack.alpha * config.power_ratio * ls.theta_J**2 / phi


def saturating_leakage(
    signal: FloatArray, cap: float
) -> tuple[FloatArray, npt.NDArray[np.bool_]]:
    """Leakage for signals along the last axis, capped where no other stream interferes."""
    k = signal.shape[-1]
    others = signal @ (np.ones((k, k)) - np.eye(k))
    saturated = (others == 0.0) & (signal > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(others > 0.0, signal / np.where(others > 0.0, others, 1.0), 0.0)
    leakage = np.minimum(np.log2(1.0 + ratio), cap)
    leakage[saturated] = cap
    return leakage, saturated


def leakage_rates(
    ls: LargeScale, attack: AttackVector, pa: PowerAllocation, config: SystemConfig
) -> FloatArray:
    """Large-M leakage ``log2(1 + S_k / sum_{l != k} S_l)``, independent of M.

    A contaminated user whose stream is the only one leaking sees no interference at
    the attacker; its leakage saturates at ``config.leakage_cap``.
    """
    leakage, _ = saturating_leakage(leakage_signal(ls, attack, pa, config), config.leakage_cap)
    return leakage


def exact_leakage_rates(
    real: ChannelRealization,
    ls: LargeScale,
    est: EstimatedChannels,
    pa: PowerAllocation,
) -> FloatArray:
    """Finite-M leakage of one realization, the attacker treating other streams as noise."""
    received = pa.pd * np.abs(attacker_channel(real, ls) @ est.v.T) ** 2
    interference = received.sum() - received
    return np.log2(1.0 + received / (interference + 1.0))


def secrecy_report(
    ls: LargeScale, attack: AttackVector, pa: PowerAllocation, config: SystemConfig
) -> SecrecyReport:
    """Combine large-M rates and leakage into ``R_s,k = [R_k - R_k^e]^+``."""
    rates = asymptotic_rates(ls, attack, pa, config).rates
    leakage, saturated = saturating_leakage(
        leakage_signal(ls, attack, pa, config), config.leakage_cap
    )
    if saturated.any():
        logger.debug("Leakage saturated", extra={"users": np.flatnonzero(saturated).tolist()})
    secrecy = np.clip(rates - leakage, 0.0, None)
    return SecrecyReport(
        rates=rates,
        leakage=leakage,
        secrecy=secrecy,
        max_secrecy=float(secrecy.max()),
        saturated=saturated,
    )
