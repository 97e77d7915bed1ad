"""Sum-rate game between a water-filling BS and a pilot-contaminating attacker.

Both players act on the per-user levels ``l_k = c_k alpha_k + d_k`` with
``c_k = u_k theta_J / (M theta_k^2)`` and ``d_k = (theta_k + 1/(P_k L)) / (M theta_k^2)``:

- the BS pours ``P_k^(d) = [eta - l_k]^+`` until ``sum P^(d) = P_A``;
- at a price ``lam`` on its pilot budget the attacker lifts every level to
  ``max(d_k, eta c_k / (c_k + lam eta))``.

Plain alternation of the two best responses falls into 2-cycles on most drops.
The rounds here alternate in price space instead: the BS pours against the
attacker's current price, then the attacker moves its price by a safeguarded
Newton step on its budget residual ``sum alpha - 1``, which is continuous and
decreasing in ``lam``. The root is the saddle point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from mimo_pcsim.attack.pilot import optimal_pilot_attack
from mimo_pcsim.attack.power import water_filling
from mimo_pcsim.channel.topology import large_scale
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import (
    AttackVector,
    GameState,
    LargeScale,
    PowerAllocation,
    Topology,
)
from mimo_pcsim.domain.exceptions import ConvergenceError
from mimo_pcsim.rates.downlink import asymptotic_rates

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITER = 100
# 每回合 log(lam) 的最大步長
MAX_LOG_STEP = 5.0


@dataclass(frozen=True)
class _Round:
    """Both responses at one attacker price."""

    lam: float
    eta: float
    pd: FloatArray
    alpha: FloatArray
    value: float

    @property
    def excess(self) -> float:
        return float(self.alpha.sum() - 1.0)


def _level_coefficients(ls: LargeScale, config: SystemConfig) -> tuple[FloatArray, FloatArray]:
    gain = config.antennas * ls.theta**2
    return config.power_ratio * ls.theta_J / gain, (ls.theta + config.pilot_noise) / gain


def _powers(eta: float, lam: float, c: FloatArray, d: FloatArray) -> FloatArray:
    # eta - max(d, t) with eta - t = lam eta^2 / (c + lam eta), free of cancellation
    attacked = lam * eta * eta / (c + lam * eta)
    return np.maximum(np.minimum(eta - d, attacked), 0.0)


def _respond(lam: float, c: FloatArray, d: FloatArray, total: float) -> _Round:
    """BS water level against price ``lam`` and the attacker's matching split.

    The poured power is increasing in ``eta``; the user with the lowest floor alone
    takes ``total`` at ``min(d) + total + max(c) / lam``.
    """
    lo = float(d.min())
    hi = lo + total + float(c.max()) / lam
    eta = brentq(
        lambda e: float(_powers(e, lam, c, d).sum() - total), lo, hi, xtol=1e-14 * hi, rtol=1e-14
    )
    pd = _powers(eta, lam, c, d)
    level = np.maximum(d, eta * c / (c + lam * eta))
    alpha = (level - d) / c
    value = float(np.sum(np.log2(1.0 + pd / level)))
    return _Round(lam=lam, eta=float(eta), pd=pd, alpha=alpha, value=value)


def _slope(r: _Round, c: FloatArray, d: FloatArray) -> float:
    """``d(sum alpha) / d(log lam)``, with the BS level following the price."""
    attacked = r.alpha > 0.0
    if not attacked.any():
        return 0.0
    t = d[attacked] + c[attacked] * r.alpha[attacked]
    w = t * t / c[attacked]
    powered = np.count_nonzero(r.pd > 0.0)
    deta = -w.sum() / (powered - np.sum((t / r.eta) ** 2))
    return float(r.lam * np.sum(w * (deta / r.eta**2 - 1.0 / c[attacked])))


def _next_price(r: _Round, c: FloatArray, d: FloatArray, lo: float, hi: float) -> float:
    slope = _slope(r, c, d)
    if r.excess == 0.0:
        return r.lam
    if slope < 0.0:
        step = -r.excess / slope
    else:
        step = float(np.sign(r.excess)) * MAX_LOG_STEP
    candidate = np.log(r.lam) + float(np.clip(step, -MAX_LOG_STEP, MAX_LOG_STEP))
    low = np.log(lo) if lo > 0.0 else -np.inf
    high = np.log(hi)
    if not low < candidate < high:
        # Newton left the bracket
        candidate = 0.5 * (low + high) if np.isfinite(low) else high - MAX_LOG_STEP
    return float(np.exp(candidate))


def _opening_price(
    ls: LargeScale, config: SystemConfig, c: FloatArray, d: FloatArray, lam_max: float
) -> float:
    """Attacker's marginal price after one plain best-response round from alpha = 0."""
    pd = water_filling(ls, AttackVector.none(config.users), config).pd
    alpha = optimal_pilot_attack(ls, PowerAllocation(pd), config).alpha
    active = (alpha > 0.0) & (pd > 0.0)
    if not active.any():
        return 1e-3 * lam_max
    level = c[active] * alpha[active] + d[active]
    price = float(np.median(c[active] * pd[active] / (level * (level + pd[active]))))
    return price if 0.0 < price < lam_max else 0.5 * lam_max


def _silent_state(ls: LargeScale, config: SystemConfig) -> GameState:
    attack = AttackVector.none(config.users)
    allocation = water_filling(ls, attack, config)
    value = asymptotic_rates(ls, attack, allocation, config).sum_rate
    return GameState(
        attack=attack, allocation=allocation, iterations=1, value=value, trace=(value,)
    )


def solve_p3_gauss_seidel(
    config: SystemConfig,
    topology: Topology,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> GameState:
    """Alternate BS and attacker responses until the sum-rate settles.

    Round one starts from the attacker's price after a plain best-response round
    against the attack-free water-filling. Every round then lets the BS water-fill
    against the current price and updates the price from the attacker's budget
    residual, keeping a bracket on the root.

    Args:
        config: System constants.
        topology: Network drop known to both players.
        tol: Relative sum-rate change between rounds, and budget residual, that
            stop the iteration.
        max_iter: Round cap.

    Returns:
        GameState: Final allocation pair, round count and value trace.

    Raises:
        ValueError: If ``tol`` is not positive.
        ConvergenceError: If the cap is reached; carries the value trace.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    ls = large_scale(topology, config)
    if config.attacker_power <= 0:
        return _silent_state(ls, config)

    c, d = _level_coefficients(ls, config)
    # from lam_max upward every level stays at its floor, so sum alpha = 0
    lam_max = float(np.max(c / d))
    lo, hi = 0.0, lam_max
    lam = _opening_price(ls, config, c, d, lam_max)
    trace: list[float] = []

    for iteration in range(1, max_iter + 1):
        r = _respond(lam, c, d, config.bs_power)
        trace.append(r.value)
        if r.excess > 0.0:
            lo = lam
        else:
            hi = lam

        settled = (
            len(trace) > 1
            and abs(trace[-1] - trace[-2]) <= tol * abs(trace[-1])
            and abs(r.excess) <= tol
        )
        if settled:
            attack = AttackVector(r.alpha / r.alpha.sum())
            allocation = water_filling(ls, attack, config)
            value = asymptotic_rates(ls, attack, allocation, config).sum_rate
            trace[-1] = value
            logger.debug(
                "Game settled",
                extra={"iterations": iteration, "value": value, "price": r.lam},
            )
            return GameState(
                attack=attack,
                allocation=allocation,
                iterations=iteration,
                value=value,
                trace=tuple(trace),
            )
        lam = _next_price(r, c, d, lo, hi)

    raise ConvergenceError(
        f"price iteration did not settle within {max_iter} rounds",
        trace=trace,
    )


def _random_simplex(rng: np.random.Generator, size: int, total: float) -> FloatArray:
    return rng.dirichlet(np.ones(size)) * total


def check_saddle(
    state: GameState,
    ls: LargeScale,
    config: SystemConfig,
    rng: np.random.Generator,
    n_deviations: int = 100,
) -> float:
    """Largest relative gain any sampled unilateral deviation achieves.

    Attacker deviations are random full-budget pilot splits (the attacker gains by
    lowering the sum-rate); BS deviations are random full-power splits (the BS gains by
    raising it). A saddle point yields a value ``<= 0`` up to solver tolerance.
    """
    value = state.value
    best = -np.inf
    for _ in range(n_deviations):
        alpha = AttackVector(_random_simplex(rng, config.users, 1.0))
        attacked = asymptotic_rates(ls, alpha, state.allocation, config).sum_rate
        best = max(best, (value - attacked) / value)

        pd = PowerAllocation(_random_simplex(rng, config.users, config.bs_power))
        served = asymptotic_rates(ls, state.attack, pd, config).sum_rate
        best = max(best, (served - value) / value)
    return float(best)
