"""Downlink rates: finite-M Monte Carlo, large-M limits and data-phase jamming.

All rates are spectral efficiencies in bit/s/Hz (log base 2).
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from mimo_pcsim.channel.realization import true_channels
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import (
    AttackVector,
    ChannelRealization,
    EstimatedChannels,
    LargeScale,
    PowerAllocation,
    RateReport,
)
from mimo_pcsim.domain.exceptions import DomainError

FloatArray = npt.NDArray[np.float64]


def jain_fairness(rates: npt.ArrayLike) -> float:
    """Jain index ``(sum R)^2 / (K sum R^2)``; all-zero rates count as perfectly fair."""
    r = np.asarray(rates, dtype=np.float64)
    if r.size == 0:
        raise ValueError("fairness of an empty rate vector")
    squares = float(np.sum(r**2))
    if squares == 0.0:
        return 1.0
    return float(np.sum(r) ** 2 / (r.size * squares))


def rate_report(rates: npt.ArrayLike) -> RateReport:
    r = np.clip(np.asarray(rates, dtype=np.float64), 0.0, None)
    return RateReport(rates=r, sum_rate=float(r.sum()), fairness=jain_fairness(r))


def effective_noise(ls: LargeScale, attack: AttackVector, config: SystemConfig) -> FloatArray:
    """phi_k = theta_k + alpha_k u_k theta_J + 1/(P_k L), the per-entry estimate power."""
    return ls.theta + attack.alpha * config.power_ratio * ls.theta_J + config.pilot_noise


def asymptotic_sinr(
    ls: LargeScale, attack: AttackVector, pa: PowerAllocation, config: SystemConfig
) -> FloatArray:
    return pa.pd * config.antennas * ls.theta**2 / effective_noise(ls, attack, config)


def asymptotic_rates(
    ls: LargeScale, attack: AttackVector, pa: PowerAllocation, config: SystemConfig
) -> RateReport:
    """Large-M rates ``log2(1 + P_k M theta_k^2 / phi_k)``; alpha = 0 is the attack-free limit."""
    return rate_report(np.log2(1.0 + asymptotic_sinr(ls, attack, pa, config)))


def exact_rates(
    real: ChannelRealization,
    ls: LargeScale,
    est: EstimatedChannels,
    pa: PowerAllocation,
) -> RateReport:
    """Finite-M rates of MRT on contaminated estimates for one realization.

    ``R_k = log2(1 + P_k |h_k v_k^T|^2 / (sum_{l != k} P_l |h_k v_l^T|^2 + 1))``.
    """
    h = true_channels(real, ls)
    if h.shape != est.v.shape:
        raise DomainError(f"channel {h.shape} and precoder {est.v.shape} shapes differ")
    gains = np.abs(h @ est.v.T) ** 2  # [k, l] = |h_k v_l^T|^2
    received = gains * pa.pd[None, :]
    signal = np.diag(received)
    interference = received.sum(axis=1) - signal
    return rate_report(np.log2(1.0 + signal / (interference + 1.0)))


def jamming_power(
    ls: LargeScale, beta: npt.ArrayLike, power_gains: npt.ArrayLike, config: SystemConfig
) -> FloatArray:
    """E_k = sum_i beta_i P_J |g_Jk^(i)|^2 theta_Jk at every Bob.

    Args:
        ls: Large-scale gains with ``theta_Jk`` set.
        beta: Length-N jamming fractions.
        power_gains: N x K values of |g_Jk^(i)|^2.
        config: System constants (P_J).
    """
    if ls.theta_Jk is None:
        raise DomainError("data-phase jamming needs attacker-Bob gains theta_Jk")
    b = np.asarray(beta, dtype=np.float64)
    g2 = np.asarray(power_gains, dtype=np.float64)
    return config.attacker_power * (b @ g2) * ls.theta_Jk


def hybrid_sum_rate(
    ls: LargeScale,
    attack: AttackVector,
    beta: npt.ArrayLike,
    g_Jk: npt.ArrayLike,
    pa: PowerAllocation,
    config: SystemConfig,
) -> RateReport:
    """Large-M rates under pilot contamination plus data-phase jamming.

    ``R_k = log2(1 + C_k / (D_k (E_k + 1)))``, which is the asymptotic SINR divided
    by ``E_k + 1``. ``g_Jk`` holds the complex N x K attacker-Bob small-scale gains.
    """
    power_gains = np.abs(np.asarray(g_Jk)) ** 2
    jam = jamming_power(ls, beta, power_gains, config)
    sinr = asymptotic_sinr(ls, attack, pa, config) / (jam + 1.0)
    return rate_report(np.log2(1.0 + sinr))
