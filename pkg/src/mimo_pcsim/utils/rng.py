"""Splittable seeded random streams."""

import numpy as np


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Return an independent generator for the stream ``(seed, *keys)``.

    Streams with different keys never overlap, and the same keys always give
    the same draws regardless of evaluation order.
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return np.random.default_rng(sequence)
