"""Small-scale fading draws and contaminated pilot-phase estimation."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import (
    AttackVector,
    ChannelRealization,
    EstimatedChannels,
    LargeScale,
)
from mimo_pcsim.domain.exceptions import DegenerateEstimateError, DomainError

logger = logging.getLogger(__name__)


def complex_gaussian(
    rng: np.random.Generator, shape: int | tuple[int, ...], variance: float = 1.0
) -> npt.NDArray[np.complex128]:
    """Circularly symmetric complex Gaussian samples with the given variance."""
    scale = np.sqrt(variance / 2.0)
    return rng.normal(0.0, scale, shape) + 1j * rng.normal(0.0, scale, shape)


def sample_realization(
    rng: np.random.Generator, config: SystemConfig, jam_antennas: int = 0
) -> ChannelRealization:
    """Draw one frame of small-scale fading.

    The estimation noise is drawn already projected onto each user's pilot, so
    pilots never appear as symbol sequences.

    Args:
        rng: Stream owned by this realization.
        config: System constants (M, K, P_k, L).
        jam_antennas: Number N of attacker jamming antennas; 0 skips G_Jk.

    Returns:
        ChannelRealization: Fading draws for users, attacker and noise.
    """
    k, m = config.users, config.antennas
    G = complex_gaussian(rng, (k, m))
    g_J = complex_gaussian(rng, m)
    noise_std = np.sqrt(config.pilot_noise)[:, None]
    W = complex_gaussian(rng, (k, m)) * noise_std
    G_Jk = complex_gaussian(rng, (jam_antennas, k)) if jam_antennas > 0 else None
    return ChannelRealization(G=G, g_J=g_J, W=W, G_Jk=G_Jk)


def true_channels(real: ChannelRealization, ls: LargeScale) -> npt.NDArray[np.complex128]:
    """h_k = sqrt(theta_k) g_k, stacked K x M."""
    return np.sqrt(ls.theta)[:, None] * real.G


def attacker_channel(real: ChannelRealization, ls: LargeScale) -> npt.NDArray[np.complex128]:
    """h_J = sqrt(theta_J) g_J."""
    return np.sqrt(ls.theta_J) * real.g_J


def estimate_channels(
    real: ChannelRealization,
    ls: LargeScale,
    attack: AttackVector,
    config: SystemConfig,
) -> EstimatedChannels:
    """Contaminated least-squares estimates and their MRT precoders.

    ``h_hat_k = sqrt(theta_k) g_k + sqrt(alpha_k u_k theta_J) g_J + w_k`` and
    ``v_k = conj(h_hat_k) / ||h_hat_k||``.

    Raises:
        DomainError: If the attack or large-scale gains do not match K.
        DegenerateEstimateError: If some estimate has zero norm.
    """
    k = real.G.shape[0]
    if attack.users != k or ls.theta.size != k:
        raise DomainError(
            f"dimension mismatch: K={k}, attack={attack.users}, theta={ls.theta.size}"
        )
    contamination = np.sqrt(attack.alpha * config.power_ratio * ls.theta_J)
    h_hat = true_channels(real, ls) + contamination[:, None] * real.g_J[None, :] + real.W

    norms = np.linalg.norm(h_hat, axis=1)
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise DegenerateEstimateError(int(zero[0]))
    v = np.conj(h_hat) / norms[:, None]
    return EstimatedChannels(h_hat=h_hat, v=v)
