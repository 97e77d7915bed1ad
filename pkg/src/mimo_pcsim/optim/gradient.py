"""Projected-gradient descent with spectral steps and Armijo backtracking."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from mimo_pcsim.domain.exceptions import ConvergenceError
from mimo_pcsim.domain.interfaces import SmoothObjective

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
Projection = Callable[[FloatArray], FloatArray]

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 100_000
ARMIJO_C = 1e-4
STEP_MIN = 1e-12
STEP_MAX = 1e12
MAX_BACKTRACKS = 60
VALUE_RTOL = 1e-14


@dataclass(frozen=True)
class GradientResult:
    x: FloatArray
    value: float
    iterations: int
    residual: float


def projected_gradient_residual(
    objective: SmoothObjective, x: FloatArray, project: Projection
) -> float:
    """``||x - P(x - grad f(x))||``, zero exactly at stationary points."""
    return float(np.linalg.norm(x - project(x - objective.gradient(x))))


def projected_gradient(
    objective: SmoothObjective,
    x0: npt.ArrayLike,
    project: Projection,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> GradientResult:
    """Minimize a smooth convex objective over a convex set.

    Each iteration moves along ``P(x - s g) - x`` with a Barzilai-Borwein step ``s``
    and halves the move until the Armijo condition holds.

    Args:
        objective: Value and gradient provider.
        x0: Starting point (projected before use).
        project: Euclidean projection onto the feasible set.
        tol: Stop when the unit-step projected-gradient residual is below this.
        max_iter: Iteration cap.

    Returns:
        GradientResult: Final point, value, iteration count and residual.

    Raises:
        ConvergenceError: If ``max_iter`` iterations do not reach ``tol``, or the line
            search stalls twice in a row above ``tol``.
    """
    x = project(np.asarray(x0, dtype=np.float64))
    fx = objective.value(x)
    g = objective.gradient(x)
    gnorm = float(np.max(np.abs(g))) if g.size else 0.0
    step = 1.0 / gnorm if gnorm > 0 else 1.0

    restarted = False
    for iteration in range(max_iter):
        residual = float(np.linalg.norm(x - project(x - g)))
        if residual < tol:
            logger.debug(
                "Projected gradient converged",
                extra={"iterations": iteration, "residual": residual},
            )
            return GradientResult(x=x, value=fx, iterations=iteration, residual=residual)

        direction = project(x - step * g) - x
        slope = float(g @ direction)
        # rounding slack so descent near the optimum is not rejected
        slack = VALUE_RTOL * max(1.0, abs(fx))
        t = 1.0
        for _ in range(MAX_BACKTRACKS):
            candidate = x + t * direction
            f_candidate = objective.value(candidate)
            if f_candidate <= fx + ARMIJO_C * t * slope + slack:
                break
            t *= 0.5
        else:
            # no sufficient decrease at machine precision
            candidate, f_candidate = x, fx

        g_new = objective.gradient(candidate)
        s = candidate - x
        y = g_new - g
        sy = float(s @ y)
        step = float(np.clip(s @ s / sy, STEP_MIN, STEP_MAX)) if sy > 0 else STEP_MAX
        if not np.any(s):
            if restarted:
                raise ConvergenceError(
                    f"projected gradient stalled at residual {residual:.3g} > tol={tol}",
                    trace=[fx],
                    diagnostics={"residual": residual, "x": x.tolist(), "stalled": True},
                )
            # stalled line search; restart once from the unit step
            step, restarted = 1.0, True
        else:
            restarted = False
        x, fx, g = candidate, f_candidate, g_new

    residual = projected_gradient_residual(objective, x, project)
    raise ConvergenceError(
        f"projected gradient did not reach tol={tol} in {max_iter} iterations",
        trace=[fx],
        diagnostics={"residual": residual, "x": x.tolist()},
    )
