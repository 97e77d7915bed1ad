"""Distance-unaware pilot attack and the value of perfect location information."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from mimo_pcsim.attack.pilot import (
    SumRateObjective,
    optimal_pilot_attack,
    p1_coefficients,
    p1_objective,
    solve_p1_numeric,
)
from mimo_pcsim.attack.power import uniform_allocation
from mimo_pcsim.channel.topology import large_scale, sample_topology
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, LargeScale, PowerAllocation
from mimo_pcsim.domain.interfaces import PowerStrategy
from mimo_pcsim.optim.quadrature import AnnulusGrid, check_intervals

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

DEFAULT_GRID = 64


def expected_rate_objective(
    config: SystemConfig, pa: PowerAllocation, grid_n: int = DEFAULT_GRID
) -> SumRateObjective:
    """Simpson approximation of ``E[R_sum]`` over user and attacker distances.

    Users lie uniformly in ``[d_min, d_max]`` and the attacker in
    ``[d_min, d_max_attacker]``; the double integral is a tensor product of the two
    one-dimensional rules, flattened into nodes per user.
    """
    users = AnnulusGrid.build(config.d_min, config.d_max, grid_n)
    attacker = AnnulusGrid.build(config.d_min, config.d_max_attacker, grid_n)

    gamma, A = config.path_loss_exponent, config.path_loss_constant
    theta = A * users.nodes ** (-gamma)  # x nodes
    theta_J = A * attacker.nodes ** (-gamma)  # y nodes
    scale = config.power_ratio[:, None, None] * theta_J[None, None, :]
    a = pa.pd[:, None, None] * config.antennas * (theta**2)[None, :, None] / scale
    b = (theta[None, :, None] + config.pilot_noise[:, None, None]) / scale
    weights = np.outer(users.weights, attacker.weights).ravel()
    k = config.users
    return SumRateObjective(a.reshape(k, -1), b.reshape(k, -1), weights)


def expected_sum_rate(
    alpha: npt.ArrayLike, pa: PowerAllocation, config: SystemConfig, grid_n: int = DEFAULT_GRID
) -> float:
    return expected_rate_objective(config, pa, grid_n).value(np.asarray(alpha, dtype=np.float64))


def solve_p2(
    config: SystemConfig, pa: PowerAllocation, grid_n: int = DEFAULT_GRID
) -> AttackVector:
    """Attack minimizing the expected sum-rate when only distance laws are known.

    Args:
        config: System constants with the two annuli.
        pa: BS allocation assumed by the attacker.
        grid_n: Simpson intervals per distance axis (even, >= 8).

    Raises:
        ValueError: If ``grid_n`` is odd or below 8.
    """
    check_intervals(grid_n)
    if config.attacker_power <= 0:
        return AttackVector.none(config.users)
    objective = expected_rate_objective(config, pa, grid_n)
    attack = solve_p1_numeric(objective, config.users)
    logger.debug("Distribution-aware attack", extra={"alpha": attack.alpha.tolist()})
    return attack


def information_gap(
    ls: LargeScale, pa: PowerAllocation, blind: AttackVector, config: SystemConfig
) -> float:
    """Sum-rate the attacker loses on one drop by not knowing the distances."""
    if config.attacker_power <= 0:
        return 0.0
    coef = p1_coefficients(ls, pa, config)
    informed = optimal_pilot_attack(ls, pa, config)
    return p1_objective(blind.alpha, coef) - p1_objective(informed.alpha, coef)


def evpi(
    config: SystemConfig,
    pa_strategy: PowerStrategy,
    n_topologies: int,
    rng: np.random.Generator,
    grid_n: int = DEFAULT_GRID,
) -> tuple[float, float]:
    """Monte Carlo expected value of perfect location information.

    The distribution-aware attack is fixed once against the equal split. On every
    sampled topology the BS allocates with ``pa_strategy`` on attack-free statistics,
    and the sum-rate under the fixed attack is compared with the sum-rate under the
    attack re-optimized for that topology. Each sample difference is nonnegative.

    Returns:
        Mean and standard error of the sum-rate gap (bit/s/Hz).
    """
    if n_topologies < 1:
        raise ValueError("n_topologies must be >= 1")
    blind = solve_p2(config, uniform_allocation(config), grid_n)
    no_attack = AttackVector.none(config.users)

    gaps = np.empty(n_topologies)
    for i in range(n_topologies):
        ls = large_scale(sample_topology(rng, config), config)
        gaps[i] = information_gap(ls, pa_strategy.allocate(ls, no_attack, config), blind, config)

    stderr = float(gaps.std(ddof=1) / np.sqrt(n_topologies)) if n_topologies > 1 else 0.0
    return float(gaps.mean()), stderr
