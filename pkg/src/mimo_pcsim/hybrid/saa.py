"""Two-stage hybrid attack solved by sample-average approximation.

The attacker first splits pilot power across users (alpha), then, for every sampled
attacker-to-Bob channel, splits jamming power across its N antennas (beta). The
frame-averaged power constraint couples the stages:

    t_p * sum(alpha) + t_d * sum(beta_t) <= t_p + t_d    for every scenario t.

Both stages only ever lower the sum-rate, so at the optimum the constraint is
active. For a fixed pilot budget ``sigma = sum(alpha)`` the problem splits into a
simplex block for alpha and one simplex block per scenario; the value as a
function of ``sigma`` is convex and is minimized by a bounded scalar search.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize_scalar

from mimo_pcsim.attack.pilot import LN2, p1_coefficients, solve_p1_closed_form
from mimo_pcsim.channel.topology import large_scale
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import (
    AttackVector,
    HybridPolicy,
    LargeScale,
    P1Coefficients,
    PowerAllocation,
    ScenarioSet,
    Topology,
)
from mimo_pcsim.domain.exceptions import ConvergenceError, DomainError
from mimo_pcsim.optim.gradient import projected_gradient
from mimo_pcsim.optim.simplex import project_simplex, project_simplex_rows
from mimo_pcsim.rates.downlink import asymptotic_rates

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 200
SIGMA_XATOL = 1e-4


def jamming_gains(ls: LargeScale, scenarios: ScenarioSet, config: SystemConfig) -> FloatArray:
    """``P_J |g_Jk^(i)|^2 theta_Jk`` per scenario, antenna and Bob (T x N x K)."""
    if ls.theta_Jk is None:
        raise DomainError("hybrid attack needs attacker-Bob gains theta_Jk")
    return config.attacker_power * scenarios.power_gains * ls.theta_Jk[None, None, :]


class HybridModel:
    """Sample-average sum-rate ``sum_t w_t sum_k log2(1 + a_k / ((alpha_k + b_k)(E_tk + 1)))``."""

    def __init__(
        self, coef: P1Coefficients, jamming: FloatArray, weights: FloatArray | None = None
    ) -> None:
        self.a = coef.a
        self.b = coef.b
        self.jamming = np.asarray(jamming, dtype=np.float64)
        size = self.jamming.shape[0]
        self.weights = np.full(size, 1.0 / size) if weights is None else np.asarray(weights)

    @property
    def scenarios(self) -> int:
        return int(self.jamming.shape[0])

    @property
    def antennas(self) -> int:
        return int(self.jamming.shape[1])

    def _terms(self, alpha: FloatArray, beta: FloatArray) -> tuple[FloatArray, FloatArray]:
        x = np.asarray(alpha)[None, :] + self.b[None, :]
        y = 1.0 + np.einsum("ti,tik->tk", beta, self.jamming)
        return x, y

    def per_scenario(self, alpha: FloatArray, beta: FloatArray) -> FloatArray:
        x, y = self._terms(alpha, beta)
        return np.log2(1.0 + self.a / (x * y)).sum(axis=1)

    def value(self, alpha: FloatArray, beta: FloatArray) -> float:
        return float(self.weights @ self.per_scenario(alpha, beta))

    def gradient_alpha(self, alpha: FloatArray, beta: FloatArray) -> FloatArray:
        x, y = self._terms(alpha, beta)
        return -(self.weights @ (self.a / (x * (x * y + self.a)))) / LN2

    def gradient_beta(self, alpha: FloatArray, beta: FloatArray) -> FloatArray:
        x, y = self._terms(alpha, beta)
        d_jam = -self.weights[:, None] * self.a / (y * (x * y + self.a)) / LN2
        return np.einsum("tik,tk->ti", self.jamming, d_jam)


class _AlphaBlock:
    def __init__(self, model: HybridModel, beta: FloatArray) -> None:
        self.model, self.beta = model, beta

    def value(self, x: FloatArray) -> float:
        return self.model.value(x, self.beta)

    def gradient(self, x: FloatArray) -> FloatArray:
        return self.model.gradient_alpha(x, self.beta)


class _BetaBlock:
    # flattened T x N so the solver sees a plain vector
    def __init__(self, model: HybridModel, alpha: FloatArray) -> None:
        self.model, self.alpha = model, alpha
        self.shape = (model.scenarios, model.antennas)

    def value(self, x: FloatArray) -> float:
        return self.model.value(self.alpha, x.reshape(self.shape))

    def gradient(self, x: FloatArray) -> FloatArray:
        return self.model.gradient_beta(self.alpha, x.reshape(self.shape)).ravel()


def hybrid_objective(
    alpha: npt.ArrayLike,
    beta: npt.ArrayLike,
    coef: P1Coefficients,
    jamming: FloatArray,
    weights: FloatArray | None = None,
) -> float:
    """Sample-average hybrid sum-rate (bit/s/Hz) of a policy.

    Args:
        alpha: Length-K pilot fractions.
        beta: T x N jamming fractions.
        coef: Pilot-attack coefficients of the drop.
        jamming: T x N x K output of :func:`jamming_gains`.
        weights: Scenario probabilities; uniform when omitted.
    """
    model = HybridModel(coef, jamming, weights)
    return model.value(
        np.asarray(alpha, dtype=np.float64), np.atleast_2d(np.asarray(beta, dtype=np.float64))
    )


def pilot_budget_max(config: SystemConfig) -> float:
    """Largest sum(alpha): the whole frame budget spent during the pilot phase."""
    return (config.pilot_duration + config.data_duration) / config.pilot_duration


def jamming_budget(config: SystemConfig, sigma: float) -> float:
    """Jamming budget per scenario left once ``sigma`` is spent on pilots."""
    frame = config.pilot_duration + config.data_duration
    return max(frame - config.pilot_duration * sigma, 0.0) / config.data_duration


def budget_usage(policy: HybridPolicy, config: SystemConfig) -> FloatArray:
    """Frame-averaged power fraction used in every scenario; feasible policies stay <= 1."""
    frame = config.pilot_duration + config.data_duration
    pilot = config.pilot_duration * policy.attack.alpha.sum()
    return (pilot + config.data_duration * policy.beta.sum(axis=1)) / frame


def _best_jamming(
    model: HybridModel, alpha: FloatArray, budget: float, beta0: FloatArray | None = None
) -> FloatArray:
    shape = (model.scenarios, model.antennas)
    if budget <= 0:
        return np.zeros(shape)
    start = np.full(shape, budget / model.antennas) if beta0 is None else beta0
    result = projected_gradient(
        _BetaBlock(model, alpha),
        start.ravel(),
        lambda x: project_simplex_rows(x.reshape(shape), budget).ravel(),
    )
    return result.x.reshape(shape)


def _solve_at_budget(
    model: HybridModel,
    coef: P1Coefficients,
    sigma: float,
    config: SystemConfig,
    tol: float,
    max_iter: int,
) -> tuple[FloatArray, FloatArray, float]:
    """Block-coordinate minimization with ``sum(alpha) = sigma``."""
    users = coef.users
    jam_budget = jamming_budget(config, sigma)
    if sigma <= 0:
        alpha = np.zeros(users)
        beta = _best_jamming(model, alpha, jam_budget)
        return alpha, beta, model.value(alpha, beta)
    if jam_budget <= 0:
        alpha = solve_p1_closed_form(coef, sigma).alpha
        beta = np.zeros((model.scenarios, model.antennas))
        return alpha, beta, model.value(alpha, beta)

    alpha = np.full(users, sigma / users)
    beta = np.full((model.scenarios, model.antennas), jam_budget / model.antennas)
    trace: list[float] = []
    for _ in range(max_iter):
        alpha = projected_gradient(
            _AlphaBlock(model, beta), alpha, lambda x: project_simplex(x, sigma)
        ).x
        beta = _best_jamming(model, alpha, jam_budget, beta)
        trace.append(model.value(alpha, beta))
        if len(trace) > 1 and abs(trace[-2] - trace[-1]) <= tol * abs(trace[-1]):
            return alpha, beta, trace[-1]
    raise ConvergenceError(
        f"block-coordinate descent did not settle within {max_iter} rounds",
        trace=trace,
        diagnostics={"sigma": sigma},
    )


def _silent_policy(
    ls: LargeScale, pa: PowerAllocation, config: SystemConfig, size: int, antennas: int
) -> HybridPolicy:
    value = asymptotic_rates(ls, AttackVector.none(config.users), pa, config).sum_rate
    return HybridPolicy(
        attack=AttackVector.none(config.users), beta=np.zeros((size, antennas)), objective=value
    )


def solve_p6_saa(
    config: SystemConfig,
    topology: Topology,
    pa: PowerAllocation,
    scenarios: ScenarioSet,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> HybridPolicy:
    """Optimal hybrid attack against a fixed-power BS.

    Args:
        config: System constants (P_J, t_p, t_d).
        topology: Drop with attacker-Bob distances ``z_Jk``.
        pa: BS allocation, fixed for both stages.
        scenarios: Sampled jamming channels.
        tol: Relative objective change ending the block-coordinate rounds.
        max_iter: Round cap per pilot budget.

    Returns:
        HybridPolicy: Pilot split, per-scenario jamming split and objective (bit/s/Hz).

    Raises:
        ConvergenceError: If a block-coordinate solve hits ``max_iter``.
    """
    ls = large_scale(topology, config)
    if config.attacker_power <= 0:
        return _silent_policy(ls, pa, config, scenarios.size, scenarios.antennas)

    coef = p1_coefficients(ls, pa, config)
    model = HybridModel(coef, jamming_gains(ls, scenarios, config), scenarios.weights)
    sigma_max = pilot_budget_max(config)
    cache: dict[float, tuple[FloatArray, FloatArray, float]] = {}

    def solve(sigma: float) -> tuple[FloatArray, FloatArray, float]:
        if sigma not in cache:
            cache[sigma] = _solve_at_budget(model, coef, sigma, config, tol, max_iter)
        return cache[sigma]

    search = minimize_scalar(
        lambda s: solve(float(s))[2],
        bounds=(0.0, sigma_max),
        method="bounded",
        options={"xatol": SIGMA_XATOL},
    )
    # the bounded search never evaluates the corners themselves
    best = min((solve(s) for s in (0.0, float(search.x), sigma_max)), key=lambda r: r[2])
    alpha, beta, value = best
    logger.debug(
        "Hybrid attack",
        extra={"sigma": float(alpha.sum()), "value": value, "evaluations": len(cache)},
    )
    return HybridPolicy(attack=AttackVector(alpha, budget=sigma_max), beta=beta, objective=value)


def solve_data_only(
    config: SystemConfig,
    topology: Topology,
    pa: PowerAllocation,
    scenarios: ScenarioSet,
) -> HybridPolicy:
    """Jamming-only baseline: no pilot contamination, the whole budget in the data phase."""
    ls = large_scale(topology, config)
    if config.attacker_power <= 0:
        return _silent_policy(ls, pa, config, scenarios.size, scenarios.antennas)
    coef = p1_coefficients(ls, pa, config)
    model = HybridModel(coef, jamming_gains(ls, scenarios, config), scenarios.weights)
    alpha, beta, value = _solve_at_budget(model, coef, 0.0, config, DEFAULT_TOL, DEFAULT_MAX_ITER)
    return HybridPolicy(
        attack=AttackVector(alpha, budget=pilot_budget_max(config)), beta=beta, objective=value
    )


@dataclass(frozen=True)
class PolicyEvaluation:
    mean: float
    stderr: float
    sum_rates: FloatArray


def evaluate_policy_out_of_sample(
    policy: HybridPolicy,
    config: SystemConfig,
    topology: Topology,
    pa: PowerAllocation,
    fresh: ScenarioSet,
    reoptimize: bool = True,
) -> PolicyEvaluation:
    """Sum-rate statistics of a first-stage decision on scenarios it was not fitted to.

    With ``reoptimize`` the jamming split is re-solved for every fresh scenario under
    the budget left by ``policy.attack``; otherwise no jamming is played.
    """
    ls = large_scale(topology, config)
    alpha = policy.attack.alpha
    if config.attacker_power <= 0:
        value = asymptotic_rates(ls, policy.attack, pa, config).sum_rate
        rates = np.full(fresh.size, value)
    else:
        model = HybridModel(p1_coefficients(ls, pa, config), jamming_gains(ls, fresh, config))
        budget = jamming_budget(config, float(alpha.sum())) if reoptimize else 0.0
        beta = _best_jamming(model, alpha, budget)
        rates = model.per_scenario(alpha, beta)
    stderr = float(rates.std(ddof=1) / np.sqrt(rates.size)) if rates.size > 1 else 0.0
    return PolicyEvaluation(mean=float(rates.mean()), stderr=stderr, sum_rates=rates)


def hybrid_information_gap(
    policy: HybridPolicy,
    config: SystemConfig,
    topology: Topology,
    pa: PowerAllocation,
    fresh: ScenarioSet,
) -> float:
    """Sum-rate the attacker leaves on the table by not knowing the jamming channels.

    The fitted policy, with jamming re-solved per fresh scenario, is compared with an
    attacker that sees each scenario before choosing both its pilot and data splits.
    """
    committed = evaluate_policy_out_of_sample(policy, config, topology, pa, fresh).mean
    informed = np.mean(
        [
            solve_p6_saa(config, topology, pa, ScenarioSet(fresh.gains[t : t + 1])).objective
            for t in range(fresh.size)
        ]
    )
    return max(committed - float(informed), 0.0)
