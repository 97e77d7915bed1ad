"""Attack schemes: one curve each in the experiment catalog.

Every scheme turns a :class:`Drop` into metric samples. Sum-rate schemes pick the
attack against the BS's attack-free allocation; the BS then applies its power
strategy to the contaminated statistics it observes.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from mimo_pcsim.attack import (
    FixedPower,
    PowerMode,
    get_power_strategy,
    information_gap,
    optimal_pilot_attack,
    solve_p2,
    solve_p3_gauss_seidel,
    uniform_allocation,
)
from mimo_pcsim.attack.stochastic import DEFAULT_GRID
from mimo_pcsim.channel import (
    estimate_channels,
    large_scale,
    sample_realization,
    sample_topology,
)
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, Drop, PowerAllocation
from mimo_pcsim.domain.interfaces import AttackScheme, PowerStrategy, SchemeOutcome
from mimo_pcsim.hybrid import (
    build_scenarios,
    hybrid_information_gap,
    solve_data_only,
    solve_p6_saa,
)
from mimo_pcsim.rates import asymptotic_rates, exact_rates, secrecy_report
from mimo_pcsim.secrecy import (
    secrecy_coefficients,
    solve_p4_bruteforce,
    solve_p5_chance,
    solve_p5_greedy,
    validate_chance_solution,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def blind_attack(config: SystemConfig, grid_n: int = DEFAULT_GRID) -> AttackVector:
    """Distribution-aware attack against the equal split, shared by all drops of a config."""
    attack = solve_p2(config, uniform_allocation(config), grid_n)
    logger.info("Distribution-aware attack ready", extra={"users": config.users, "grid": grid_n})
    return attack


class SumRateScheme(AttackScheme):
    """Base for schemes reporting rates, fairness and secrecy of one attack.

    Args:
        strategy: BS power strategy; defaults to the fixed equal split.
        exact: Also evaluate the finite-M Monte Carlo sum-rate of one realization.
    """

    label = "noPC"

    def __init__(self, strategy: PowerStrategy | None = None, exact: bool = False) -> None:
        self.strategy = strategy or FixedPower()
        self.exact = exact

    def choose_attack(self, drop: Drop, pa: PowerAllocation) -> AttackVector:
        return AttackVector.none(drop.config.users)

    def play(self, drop: Drop) -> tuple[AttackVector, PowerAllocation]:
        none = AttackVector.none(drop.config.users)
        pa0 = self.strategy.allocate(drop.large_scale, none, drop.config)
        attack = self.choose_attack(drop, pa0)
        return attack, self.strategy.allocate(drop.large_scale, attack, drop.config)

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        attack, pa = self.play(drop)
        report = asymptotic_rates(drop.large_scale, attack, pa, drop.config)
        secrecy = secrecy_report(drop.large_scale, attack, pa, drop.config)
        outcome: SchemeOutcome = {
            "sum_rate": report.sum_rate,
            "fairness": report.fairness,
            "max_secrecy": secrecy.max_secrecy,
            "rates": report.rates,
            "secrecy": secrecy.secrecy,
        }
        if self.exact:
            real = sample_realization(drop.rng, drop.config)
            est = estimate_channels(real, drop.large_scale, attack, drop.config)
            outcome["exact_sum_rate"] = exact_rates(real, drop.large_scale, est, pa).sum_rate
        return outcome


class NoAttack(SumRateScheme):
    label = "noPC"


class UniformAttack(SumRateScheme):
    """Equal pilot split, what an attacker without any knowledge would do."""

    label = "uniformPC"

    def choose_attack(self, drop: Drop, pa: PowerAllocation) -> AttackVector:
        return AttackVector.uniform(drop.config.users)


class SingleUserAttack(SumRateScheme):
    label = "singleUserPC"

    def choose_attack(self, drop: Drop, pa: PowerAllocation) -> AttackVector:
        target = int(drop.rng.integers(drop.config.users))
        return AttackVector.single(drop.config.users, target)


class DistributionAwareAttack(SumRateScheme):
    label = "PC-unc"

    def __init__(
        self,
        strategy: PowerStrategy | None = None,
        exact: bool = False,
        grid_n: int = DEFAULT_GRID,
    ) -> None:
        super().__init__(strategy, exact)
        self.grid_n = grid_n

    def choose_attack(self, drop: Drop, pa: PowerAllocation) -> AttackVector:
        return blind_attack(drop.config, self.grid_n)


class PerfectInformationAttack(SumRateScheme):
    label = "PC-pi"

    def choose_attack(self, drop: Drop, pa: PowerAllocation) -> AttackVector:
        return optimal_pilot_attack(drop.large_scale, pa, drop.config)


class SaddlePointAttack(SumRateScheme):
    """Both players at the equilibrium of the sum-rate game against a water-filling BS."""

    label = "optimalPC-pi"

    def __init__(self, exact: bool = False) -> None:
        super().__init__(get_power_strategy(PowerMode.WATER_FILLING), exact)

    def play(self, drop: Drop) -> tuple[AttackVector, PowerAllocation]:
        state = solve_p3_gauss_seidel(drop.config, drop.topology)
        return state.attack, state.allocation


class HybridAttack(AttackScheme):
    """Pilot contamination plus data-phase jamming with sampled jamming channels."""

    label = "hybrid"

    def __init__(self, scenarios: int = 50, information_samples: int = 0) -> None:
        self.scenarios = scenarios
        self.information_samples = information_samples

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        config = drop.config
        pa = uniform_allocation(config)
        sets = build_scenarios(drop.rng, drop.jam_antennas, config.users, self.scenarios)
        policy = solve_p6_saa(config, drop.topology, pa, sets)
        outcome: SchemeOutcome = {"sum_rate": policy.objective}
        if self.information_samples > 0:
            fresh = build_scenarios(
                drop.rng, drop.jam_antennas, config.users, self.information_samples
            )
            outcome["evpi"] = hybrid_information_gap(policy, config, drop.topology, pa, fresh)
        return outcome


class DataOnlyAttack(HybridAttack):
    label = "dataOnly"

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        config = drop.config
        sets = build_scenarios(drop.rng, drop.jam_antennas, config.users, self.scenarios)
        policy = solve_data_only(config, drop.topology, uniform_allocation(config), sets)
        return {"sum_rate": policy.objective}


class GridSecrecyAttack(AttackScheme):
    """Exhaustive search on the exact max-secrecy objective (small K only)."""

    label = "PC-Sec-P4"

    def __init__(self, grid_res: float = 0.02) -> None:
        self.grid_res = grid_res

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        config = drop.config
        coef = secrecy_coefficients(drop.large_scale, uniform_allocation(config), config)
        _, value = solve_p4_bruteforce(coef, self.grid_res, cap=config.leakage_cap)
        return {"max_secrecy": value}


class GreedySecrecyAttack(AttackScheme):
    """Greedy minimizer of the known-distance secrecy bound.

    Reports both the bound it reached and the exact secrecy its split leaves.
    """

    label = "PC-Sec-P5"

    def __init__(self, delta: float = 1e-3) -> None:
        self.delta = delta

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        pa = uniform_allocation(drop.config)
        coef = secrecy_coefficients(drop.large_scale, pa, drop.config)
        attack, nu_hat = solve_p5_greedy(coef, self.delta)
        report = secrecy_report(drop.large_scale, attack, pa, drop.config)
        return {
            "max_secrecy": report.max_secrecy,
            "secrecy_bound": float(np.log2(nu_hat)),
            "secrecy": report.secrecy,
        }


class ChanceSecrecyAttack(AttackScheme):
    """Secrecy threshold guaranteed to all but an ``epsilon`` fraction of Bobs.

    Args:
        users: Redraw the drop with this many users (the K=20 variant).
        delta: Greedy step.
        validation_samples: Fresh user draws used to measure the exceedance.
    """

    label = "chance"

    def __init__(
        self, users: int | None = None, delta: float = 1e-3, validation_samples: int = 20
    ) -> None:
        self.users = users
        self.delta = delta
        self.validation_samples = validation_samples

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        config, ls, z_J = drop.config, drop.large_scale, drop.topology.z_J
        if self.users is not None and self.users != config.users:
            config = config.with_overrides(users=self.users)
            topology = sample_topology(drop.rng, config)
            ls, z_J = large_scale(topology, config), topology.z_J
        pa = uniform_allocation(config)
        if config.attacker_power <= 0:
            report = secrecy_report(ls, AttackVector.none(config.users), pa, config)
            return {"threshold": report.max_secrecy}
        coef = secrecy_coefficients(ls, pa, config)
        attack, nu_hat = solve_p5_chance(coef, config, drop.epsilon, self.delta)
        outcome: SchemeOutcome = {"threshold": float(np.log2(nu_hat))}
        if self.validation_samples > 0:
            check = validate_chance_solution(
                config, attack, pa, z_J, nu_hat, self.validation_samples, drop.rng
            )
            outcome["exceedance"] = check.exceedance
            outcome["zero_fraction"] = check.zero_fraction
        return outcome


class LargeCellChanceAttack(ChanceSecrecyAttack):
    label = "chance-K20"

    def __init__(self, delta: float = 1e-3, validation_samples: int = 20) -> None:
        super().__init__(users=20, delta=delta, validation_samples=validation_samples)


class InformationValue(AttackScheme):
    """Per-drop sum-rate gap between the distribution-aware and informed attacks."""

    label = "evpi"

    def __init__(self, strategy: PowerStrategy | None = None, grid_n: int = DEFAULT_GRID) -> None:
        self.strategy = strategy or FixedPower()
        self.grid_n = grid_n

    def evaluate(self, drop: Drop) -> SchemeOutcome:
        config = drop.config
        pa = self.strategy.allocate(drop.large_scale, AttackVector.none(config.users), config)
        gap = information_gap(drop.large_scale, pa, blind_attack(config, self.grid_n), config)
        return {"evpi": gap}
