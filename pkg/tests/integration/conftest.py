import pytest

from mimo_pcsim.channel import large_scale, sample_topology
from mimo_pcsim.config import SystemConfig
from mimo_pcsim.domain.entities import Drop
from mimo_pcsim.utils import derive_rng


@pytest.fixture
def make_drop():
    """Factory for a seeded drop on a given configuration."""

    def _make(config: SystemConfig, seed: int, **kwargs) -> Drop:
        rng = derive_rng(seed, 0)
        topology = sample_topology(rng, config)
        return Drop(
            config=config,
            topology=topology,
            large_scale=large_scale(topology, config),
            rng=derive_rng(seed, 1),
            **kwargs,
        )

    return _make
