"""Sampled attacker-to-Bob channels for the sample-average hybrid attack."""

from __future__ import annotations

import numpy as np

from mimo_pcsim.channel.realization import complex_gaussian
from mimo_pcsim.domain.entities import ScenarioSet


def build_scenarios(rng: np.random.Generator, antennas: int, users: int, size: int) -> ScenarioSet:
    """Draw ``size`` equiprobable N x K sets of i.i.d. CN(0, 1) jamming gains.

    Raises:
        ValueError: If any dimension is below one.
    """
    if min(antennas, users, size) < 1:
        raise ValueError(
            f"scenario dimensions must be >= 1, got N={antennas}, K={users}, T={size}"
        )
    return ScenarioSet(complex_gaussian(rng, (size, antennas, users)))
