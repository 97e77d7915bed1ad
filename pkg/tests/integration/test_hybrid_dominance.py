from dataclasses import replace

import numpy as np
import pytest

from mimo_pcsim.utils import derive_rng
from mimo_pcsim.workflows.schemes import (
    DataOnlyAttack,
    HybridAttack,
    NoAttack,
    PerfectInformationAttack,
)


@pytest.mark.slow
@pytest.mark.parametrize("jam_antennas", [1, 4])
def test_hybrid_dominates_single_phase_attacks(small_config, make_drop, jam_antennas):
    """Test hybrid <= min(PC-only, jamming-only) <= no attack on several drops."""
    for seed in range(3):
        drop = make_drop(small_config, seed, jam_antennas=jam_antennas)
        free = NoAttack().evaluate(drop)["sum_rate"]
        pilot_only = PerfectInformationAttack().evaluate(drop)["sum_rate"]
        # same scenario stream for both so they solve over identical channels
        hybrid = HybridAttack(10).evaluate(replace(drop, rng=derive_rng(seed, 9)))
        data_only = DataOnlyAttack(10).evaluate(replace(drop, rng=derive_rng(seed, 9)))
        assert pilot_only < free
        assert data_only["sum_rate"] < free
        assert hybrid["sum_rate"] <= pilot_only * (1 + 1e-6)
        assert hybrid["sum_rate"] <= data_only["sum_rate"] * (1 + 1e-6)


@pytest.mark.slow
def test_jamming_alone_hurts_less_than_pilot_contamination(small_config, make_drop):
    """Test that a one-antenna data-only attack removes less sum-rate than PC-pi."""
    pilot_loss, data_loss = [], []
    for seed in range(3):
        drop = make_drop(small_config, seed, jam_antennas=1)
        free = NoAttack().evaluate(drop)["sum_rate"]
        pilot_loss.append(free - PerfectInformationAttack().evaluate(drop)["sum_rate"])
        data_only = DataOnlyAttack(10).evaluate(replace(drop, rng=derive_rng(seed, 9)))
        data_loss.append(free - data_only["sum_rate"])
    assert 0.0 < np.mean(data_loss) < np.mean(pilot_loss)


@pytest.mark.slow
def test_hybrid_reports_information_value_on_request(small_config, make_drop):
    """Test that the hybrid scheme adds a nonnegative EVPI only when asked."""
    drop = make_drop(small_config, 3, jam_antennas=2)
    plain = HybridAttack(8).evaluate(replace(drop, rng=derive_rng(3, 9)))
    informed = HybridAttack(8, information_samples=4).evaluate(replace(drop, rng=derive_rng(3, 9)))
    assert "evpi" not in plain
    assert informed["evpi"] >= 0.0
    assert informed["sum_rate"] == pytest.approx(plain["sum_rate"])
