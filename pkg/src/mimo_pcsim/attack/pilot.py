"""Known-distance pilot-contamination attack on the downlink sum-rate."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, LargeScale, P1Coefficients, PowerAllocation
from mimo_pcsim.domain.exceptions import DomainError, SolverError
from mimo_pcsim.domain.interfaces import SmoothObjective
from mimo_pcsim.optim.gradient import DEFAULT_MAX_ITER, DEFAULT_TOL, projected_gradient
from mimo_pcsim.optim.simplex import project_capped_simplex

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

LN2 = float(np.log(2.0))
# 乘子下界的最大擴張次數
MAX_BRACKET_EXPANSIONS = 200


class SumRateObjective:
    """Separable expected sum-rate ``sum_k E[log2(1 + a_k / (alpha_k + b_k))]``.

    ``a`` and ``b`` have shape K x n: n quadrature nodes per user, combined with
    ``weights`` (length n). A single node with unit weight is the known-distance
    objective.
    """

    def __init__(
        self, a: npt.ArrayLike, b: npt.ArrayLike, weights: npt.ArrayLike | None = None
    ) -> None:
        self.a = np.atleast_2d(np.asarray(a, dtype=np.float64))
        self.b = np.atleast_2d(np.asarray(b, dtype=np.float64))
        if self.a.shape != self.b.shape:
            raise DomainError(f"a {self.a.shape} and b {self.b.shape} differ")
        if self.a.shape[0] == 1 and weights is None:
            # a plain length-K coefficient vector is one node per user
            self.a, self.b = self.a.T, self.b.T
        self.weights = (
            np.ones(self.a.shape[1]) if weights is None else np.asarray(weights, dtype=np.float64)
        )

    @classmethod
    def from_coefficients(cls, coef: P1Coefficients) -> SumRateObjective:
        return cls(coef.a[:, None], coef.b[:, None], np.ones(1))

    def value(self, x: FloatArray) -> float:
        s = np.asarray(x)[:, None] + self.b
        return float(np.sum(np.log2(1.0 + self.a / s) @ self.weights))

    def gradient(self, x: FloatArray) -> FloatArray:
        s = np.asarray(x)[:, None] + self.b
        return -np.asarray((self.a / (s * (s + self.a))) @ self.weights) / LN2


def p1_coefficients(ls: LargeScale, pa: PowerAllocation, config: SystemConfig) -> P1Coefficients:
    """Rewrite the large-M rates as ``log2(1 + a_k / (alpha_k + b_k))``.

    ``a_k = P_k^(d) M theta_k^2 / (u_k theta_J)`` and
    ``b_k = (theta_k + 1/(P_k L)) / (u_k theta_J)``.

    Raises:
        DomainError: If the attacker is silent (P_J = 0), where no such form exists.
    """
    if config.attacker_power <= 0:
        raise DomainError("pilot-attack coefficients need a positive attacker power")
    scale = config.power_ratio * ls.theta_J
    return P1Coefficients(
        a=pa.pd * config.antennas * ls.theta**2 / scale,
        b=(ls.theta + config.pilot_noise) / scale,
    )


def p1_objective(alpha: npt.ArrayLike, coef: P1Coefficients) -> float:
    """Sum-rate ``sum_k log2(1 + a_k / (alpha_k + b_k))`` in bit/s/Hz."""
    x = np.asarray(alpha, dtype=np.float64)
    return float(np.sum(np.log2(1.0 + coef.a / (x + coef.b))))


def stationary_alpha(lam: float, coef: P1Coefficients) -> FloatArray:
    """Per-user minimizer for multiplier ``lam``: ``[(sqrt(a(a + 4/lam)) - a - 2b) / 2]^+``."""
    a, b = coef.a, coef.b
    root = np.sqrt(a * a + 4.0 * a / lam)
    # sqrt(a^2 + 4a/lam) - a without cancellation
    gap = np.divide(4.0 * a / lam, root + a, out=np.zeros_like(a), where=(root + a) > 0)
    alpha = 0.5 * (gap - 2.0 * b)
    return np.where(alpha > 0.0, alpha, 0.0)


def solve_p1_closed_form(coef: P1Coefficients, budget: float = 1.0) -> AttackVector:
    """Optimal known-distance split of the pilot budget.

    The multiplier is located by a bracketed root search on ``log(lam)``:
    ``sum_k alpha_k(lam)`` is continuous and strictly decreasing wherever positive,
    zero from ``max_k a_k / (b_k (a_k + b_k))`` upward.

    Args:
        coef: Sum-rate coefficients.
        budget: Total pilot fraction available (1 for the pure pilot attack).

    Returns:
        AttackVector: Feasible minimizer with the budget fully spent.

    Raises:
        SolverError: If no multiplier bracket is found.
    """
    if budget <= 0 or not np.any(coef.a > 0):
        return AttackVector(np.zeros(coef.users), budget=max(budget, 0.0))
    if coef.users == 1:
        return AttackVector(np.array([budget]), budget=budget)

    a, b = coef.a, coef.b
    lam_hi = float(np.max(a / (b * (a + b))))
    lam_lo = lam_hi
    for _ in range(MAX_BRACKET_EXPANSIONS):
        lam_lo *= 1e-3
        if stationary_alpha(lam_lo, coef).sum() >= budget:
            break
    else:
        raise SolverError(
            "multiplier bracket exhausted",
            diagnostics={"lam_lo": lam_lo, "lam_hi": lam_hi, "budget": budget},
        )

    def excess(log_lam: float) -> float:
        return float(stationary_alpha(np.exp(log_lam), coef).sum() - budget)

    log_lam = brentq(excess, np.log(lam_lo), np.log(lam_hi), xtol=1e-15, rtol=1e-15, maxiter=500)
    alpha = stationary_alpha(float(np.exp(log_lam)), coef)
    total = alpha.sum()
    if total > 0:
        alpha = alpha * (budget / total)
    logger.debug(
        "Closed-form pilot attack",
        extra={"multiplier": float(np.exp(log_lam)), "support": int(np.count_nonzero(alpha))},
    )
    return AttackVector(alpha, budget=budget)


def solve_p1_numeric(
    objective: SmoothObjective,
    users: int,
    budget: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> AttackVector:
    """Minimize any smooth convex objective over ``{alpha >= 0, sum alpha <= budget}``.

    Starts from the uniform split and runs projected gradient to a unit-step
    residual below ``tol``.

    Raises:
        ConvergenceError: If ``max_iter`` is exceeded.
    """
    result = projected_gradient(
        objective,
        np.full(users, budget / users),
        lambda x: project_capped_simplex(x, budget),
        tol=tol,
        max_iter=max_iter,
    )
    return AttackVector(result.x, budget=budget)


def optimal_pilot_attack(
    ls: LargeScale, pa: PowerAllocation, config: SystemConfig, budget: float = 1.0
) -> AttackVector:
    """Perfect-information attack; a silent attacker has nothing to split."""
    if config.attacker_power <= 0:
        return AttackVector(np.zeros(config.users), budget=budget)
    return solve_p1_closed_form(p1_coefficients(ls, pa, config), budget)
