"""Euclidean projections onto budget simplices."""

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]


def project_simplex(y: npt.ArrayLike, budget: float = 1.0) -> FloatArray:
    """Project onto ``{x >= 0, sum x = budget}`` with the sort-and-threshold method."""
    y = np.asarray(y, dtype=np.float64)
    if budget <= 0:
        return np.zeros_like(y)
    u = np.sort(y)[::-1]
    thresholds = (np.cumsum(u) - budget) / np.arange(1, y.size + 1)
    rho = np.nonzero(thresholds < u)[0][-1]
    return np.maximum(y - thresholds[rho], 0.0)


def project_capped_simplex(y: npt.ArrayLike, budget: float = 1.0) -> FloatArray:
    """Project onto ``{x >= 0, sum x <= budget}``.

    The nonnegative clip is already the projection when it fits the budget;
    otherwise the budget constraint is active.
    """
    clipped = np.maximum(np.asarray(y, dtype=np.float64), 0.0)
    if clipped.sum() <= budget:
        return clipped
    return project_simplex(y, budget)


def project_simplex_rows(y: npt.ArrayLike, budget: float = 1.0) -> FloatArray:
    """Row-wise :func:`project_simplex` for a 2-D array."""
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    if budget <= 0:
        return np.zeros_like(y)
    n = y.shape[1]
    u = np.sort(y, axis=1)[:, ::-1]
    thresholds = (np.cumsum(u, axis=1) - budget) / np.arange(1, n + 1)
    active = thresholds < u
    rho = n - 1 - np.argmax(active[:, ::-1], axis=1)
    theta = thresholds[np.arange(y.shape[0]), rho]
    return np.maximum(y - theta[:, None], 0.0)
