"""Simpson quadrature for expectations over a uniform-in-annulus distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.integrate import simpson

FloatArray = npt.NDArray[np.float64]

MIN_INTERVALS = 8


def check_intervals(intervals: int) -> None:
    if intervals % 2 != 0 or intervals < MIN_INTERVALS:
        raise ValueError(
            f"Simpson rule needs an even interval count >= {MIN_INTERVALS}, got {intervals}"
        )


@dataclass(frozen=True)
class AnnulusGrid:
    """Nodes and normalized weights approximating ``E[f(Z)]`` for Z uniform in an annulus.

    Z has density ``2x / (d_max^2 - d_min^2)`` on ``[d_min, d_max]``. The rule is
    composite Simpson on ``t = ln x``, where the heavy ``x^-gamma`` terms near
    ``d_min`` are smooth, with Jacobian ``2 e^{2t} / (d_max^2 - d_min^2)``.
    """

    nodes: FloatArray
    weights: FloatArray

    @classmethod
    def build(cls, d_min: float, d_max: float, intervals: int = 64) -> AnnulusGrid:
        """Build the rule.

        Args:
            d_min: Inner radius.
            d_max: Outer radius; equal to ``d_min`` gives a single unit-weight node.
            intervals: Number of Simpson intervals, even and at least 8.

        Raises:
            ValueError: If ``intervals`` is odd or too small.
        """
        check_intervals(intervals)
        if d_max <= d_min:
            return cls(nodes=np.array([float(d_min)]), weights=np.array([1.0]))

        t = np.linspace(np.log(d_min), np.log(d_max), intervals + 1)
        nodes = np.exp(t)
        jacobian = 2.0 * nodes**2 / (d_max**2 - d_min**2)
        # weight of node i is the rule applied to the i-th unit vector
        weights = simpson(np.eye(t.size) * jacobian, x=t, axis=1)
        # the Jacobian integrates to one exactly; normalizing removes the rule's error on it
        weights = weights / weights.sum()
        return cls(nodes=nodes, weights=weights)

    def expect(self, values: npt.ArrayLike, axis: int = -1) -> FloatArray:
        """Weighted sum of ``values`` sampled at ``nodes`` along ``axis``."""
        v = np.moveaxis(np.asarray(values, dtype=np.float64), axis, -1)
        return np.asarray(v @ self.weights)
