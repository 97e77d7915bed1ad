"""Monte Carlo check of a chance-constrained secrecy threshold."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from mimo_pcsim.channel.topology import annulus_inverse_cdf, large_scale
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, PowerAllocation, Topology
from mimo_pcsim.rates.leakage import secrecy_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChanceValidation:
    """Outcome of a coverage run.

    Attributes:
        exceedance: Fraction of Bobs whose secrecy rate is above ``log2(nu_hat)``.
        zero_fraction: Fraction of Bobs with no secrecy at all.
        stderr: Binomial standard error of ``exceedance``.
        samples: All sampled secrecy rates, ``n_samples x K``.
    """

    exceedance: float
    zero_fraction: float
    stderr: float
    samples: npt.NDArray[np.float64]

    def covers(self, epsilon: float, sigmas: float = 3.0) -> bool:
        return self.exceedance <= epsilon + sigmas * self.stderr


def validate_chance_solution(
    config: SystemConfig,
    attack: AttackVector,
    pa: PowerAllocation,
    z_J: float,
    nu_hat: float,
    n_samples: int,
    rng: np.random.Generator,
) -> ChanceValidation:
    """Draw fresh user distances and measure how often the threshold is beaten.

    The attacker distance stays at ``z_J``, the distance its attack was designed for.

    Raises:
        ValueError: If ``n_samples`` < 1 or ``nu_hat`` < 1.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if nu_hat < 1.0:
        raise ValueError(f"nu_hat must be >= 1, got {nu_hat}")
    threshold = float(np.log2(nu_hat))

    samples = np.empty((n_samples, config.users))
    for i in range(n_samples):
        z = annulus_inverse_cdf(rng.random(config.users), config.d_min, config.d_max)
        ls = large_scale(Topology(z=np.asarray(z), z_J=z_J), config)
        samples[i] = secrecy_report(ls, attack, pa, config).secrecy

    total = samples.size
    exceedance = float(np.count_nonzero(samples > threshold) / total)
    zero_fraction = float(np.count_nonzero(samples <= 0.0) / total)
    stderr = float(np.sqrt(exceedance * (1.0 - exceedance) / total))
    logger.debug(
        "Chance validation",
        extra={"exceedance": exceedance, "zero_fraction": zero_fraction, "n": total},
    )
    return ChanceValidation(
        exceedance=exceedance, zero_fraction=zero_fraction, stderr=stderr, samples=samples
    )
