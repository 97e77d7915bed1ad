"""Topology sampling, fading draws and pilot-phase estimation."""

from mimo_pcsim.channel.realization import (
    attacker_channel,
    complex_gaussian,
    estimate_channels,
    sample_realization,
    true_channels,
)
from mimo_pcsim.channel.topology import (
    annulus_cdf,
    annulus_inverse_cdf,
    large_scale,
    path_gain,
    sample_topology,
)

__all__ = [
    "annulus_cdf",
    "annulus_inverse_cdf",
    "attacker_channel",
    "complex_gaussian",
    "estimate_channels",
    "large_scale",
    "path_gain",
    "sample_realization",
    "sample_topology",
    "true_channels",
]
