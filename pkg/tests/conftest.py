import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from mimo_pcsim.channel import large_scale, sample_topology
from mimo_pcsim.config import Settings, SystemConfig
from mimo_pcsim.domain.entities import LargeScale
from mimo_pcsim.utils import derive_rng


@pytest.fixture(scope="session")
def test_data_dir():
    """Create a temporary directory for experiment outputs."""
    tmp_dir = Path(tempfile.mkdtemp(prefix="mimo_pcsim_test_"))
    yield tmp_dir
    shutil.rmtree(tmp_dir)


@pytest.fixture
def mock_settings(test_data_dir):
    """Provide small-scale settings writing into the temporary directory."""
    return Settings(
        output_dir=test_data_dir / "results",
        desk_antennas=64,
        desk_realizations=4,
        workers=2,
        log_level="ERROR",
    )


@pytest.fixture(autouse=True)
def patch_settings(monkeypatch, mock_settings):
    """Automatically patch get_settings to return mock_settings during tests."""
    import mimo_pcsim.cli
    import mimo_pcsim.config
    import mimo_pcsim.workflows.experiment

    monkeypatch.setattr("mimo_pcsim.config.get_settings", lambda: mock_settings)
    # Also patch where it's already imported
    monkeypatch.setattr("mimo_pcsim.workflows.experiment.get_settings", lambda: mock_settings)
    monkeypatch.setattr("mimo_pcsim.cli.get_settings", lambda: mock_settings)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def config(mock_settings):
    """Paper radio constants with 64 antennas and 10 users."""
    return SystemConfig.from_settings(mock_settings, antennas=64)


@pytest.fixture
def small_config(config):
    """Three users, small enough for exhaustive search."""
    return config.with_overrides(users=3)


@pytest.fixture
def topology(config):
    return sample_topology(derive_rng(7), config)


@pytest.fixture
def ls(topology, config) -> LargeScale:
    return large_scale(topology, config)


@pytest.fixture
def small_ls(small_config) -> LargeScale:
    return large_scale(sample_topology(derive_rng(11), small_config), small_config)


@pytest.fixture
def draw_ls():
    """Factory drawing the large-scale gains of a fresh topology."""

    def _draw(cfg: SystemConfig, seed: int) -> LargeScale:
        return large_scale(sample_topology(derive_rng(seed), cfg), cfg)

    return _draw
