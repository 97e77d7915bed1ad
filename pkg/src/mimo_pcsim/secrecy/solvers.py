"""Attacks minimizing the largest individual secrecy rate."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np
import numpy.typing as npt

from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import AttackVector, SecrecyCoefficients
from mimo_pcsim.domain.exceptions import CapacityError
from mimo_pcsim.rates.leakage import saturating_leakage
from mimo_pcsim.secrecy.coefficients import chance_constraint_lhs, secrecy_bound

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
BoundFunction = Callable[[FloatArray], FloatArray]

DEFAULT_DELTA = 1e-3
DEFAULT_LEAKAGE_CAP = 60.0
MAX_GRID_POINTS = 2_000_000
CHUNK = 65_536


def secrecy_objective(
    alpha: npt.ArrayLike, coef: SecrecyCoefficients, cap: float = DEFAULT_LEAKAGE_CAP
) -> FloatArray:
    """Exact ``max(max_k (R_k - R_k^e), 0)`` for one or many pilot splits.

    ``alpha`` may be a length-K vector or a P x K batch; the result has the batch shape.
    """
    x = np.asarray(alpha, dtype=np.float64)
    s = x + coef.b
    rates = np.log2(1.0 + coef.a / s)
    leakage, _ = saturating_leakage(coef.g * x / s, cap)
    return np.maximum((rates - leakage).max(axis=-1), 0.0)


def simplex_grid(users: int, resolution: float) -> FloatArray:
    """All points of ``{alpha >= 0, sum alpha <= 1}`` with coordinates on a 1/n lattice."""
    n = int(round(1.0 / resolution))
    cuts = np.array(list(combinations(range(n + users), users)), dtype=np.int64)
    counts = np.diff(cuts, axis=1, prepend=-1) - 1
    return counts / n


def solve_p4_bruteforce(
    coef: SecrecyCoefficients,
    grid_res: float = 0.02,
    cap: float = DEFAULT_LEAKAGE_CAP,
    max_points: int = MAX_GRID_POINTS,
) -> tuple[AttackVector, float]:
    """Exhaustive grid search of the exact max-secrecy objective.

    Args:
        coef: Secrecy constants of the drop.
        grid_res: Lattice spacing of the pilot fractions.
        cap: Leakage saturation value.
        max_points: Largest lattice size accepted.

    Returns:
        Best lattice point and its objective (bit/s/Hz).

    Raises:
        CapacityError: If the lattice exceeds ``max_points``.
    """
    n = int(round(1.0 / grid_res))
    points = comb(n + coef.users, coef.users)
    if points > max_points:
        raise CapacityError(
            f"{points} grid points for K={coef.users} at resolution {grid_res}; "
            "use the greedy bound solver instead"
        )
    grid = simplex_grid(coef.users, grid_res)
    best_value, best_alpha = np.inf, grid[0]
    for start in range(0, grid.shape[0], CHUNK):
        block = grid[start : start + CHUNK]
        values = secrecy_objective(block, coef, cap)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value, best_alpha = float(values[i]), block[i]
    logger.debug("Grid search done", extra={"points": points, "value": best_value})
    return AttackVector(best_alpha), best_value


@dataclass(frozen=True)
class GreedyResult:
    attack: AttackVector
    level: float
    """Final bound level nu_hat (>= 1)."""
    history: tuple[float, ...]


def greedy_level_descent(
    bound: BoundFunction, users: int, delta: float = DEFAULT_DELTA
) -> GreedyResult:
    """Lower the largest of K decreasing bounds by feeding pilot power to its owner.

    Each step adds ``delta`` to the user with the largest bound (lowest index on
    ties); the last step is shortened so the budget ends exactly at one. Stops early
    once the level would fall below one.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    alpha = np.zeros(users)
    values = bound(alpha)
    level = float(values.max())
    history = [level]
    while True:
        remaining = 1.0 - alpha.sum()
        if remaining <= 1e-12:
            break
        i = int(np.argmax(values))
        alpha[i] += min(delta, remaining)
        values = bound(alpha)
        level = float(values.max())
        if level < 1.0:
            level = 1.0
            history.append(level)
            break
        history.append(level)
    alpha = alpha * min(1.0, 1.0 / alpha.sum()) if alpha.sum() > 0 else alpha
    return GreedyResult(attack=AttackVector(alpha), level=level, history=tuple(history))


def solve_p5_greedy(
    coef: SecrecyCoefficients, delta: float = DEFAULT_DELTA
) -> tuple[AttackVector, float]:
    """Greedy minimizer of the known-distance secrecy bound; returns the split and nu_hat."""
    result = greedy_level_descent(lambda a: secrecy_bound(a, coef), coef.users, delta)
    return result.attack, result.level


def solve_p5_chance(
    coef: SecrecyCoefficients,
    config: SystemConfig,
    epsilon: float,
    delta: float = DEFAULT_DELTA,
) -> tuple[AttackVector, float]:
    """Greedy minimizer of the unknown-distance chance bound at level ``epsilon``.

    Raises:
        ValueError: If ``epsilon`` is outside (0, 1].
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    result = greedy_level_descent(
        lambda a: chance_constraint_lhs(coef, a, config, epsilon), coef.users, delta
    )
    return result.attack, result.level
