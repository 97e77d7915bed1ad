import numpy as np
import pytest

from mimo_pcsim.attack import (
    FixedPower,
    PowerMode,
    WaterFillingPower,
    get_power_strategy,
    uniform_allocation,
    water_filling,
)
from mimo_pcsim.attack.power import pour, water_levels
from mimo_pcsim.domain.entities import AttackVector
from mimo_pcsim.rates import asymptotic_rates


def test_uniform_allocation(config):
    """Test the equal split of P_A."""
    pa = uniform_allocation(config)
    np.testing.assert_allclose(pa.pd, config.bs_power / config.users)
    assert pa.is_feasible(config.bs_power)


def test_pour_hand_example():
    """Test water levels 1, 2, 10 with three units of power."""
    power, eta = pour([1.0, 2.0, 10.0], 3.0)
    assert eta == pytest.approx(3.0)
    np.testing.assert_allclose(power, [2.0, 1.0, 0.0])


def test_water_filling_kkt(config, ls):
    """Test full power use and a common water level on the active set."""
    attack = AttackVector.uniform(config.users)
    pa = water_filling(ls, attack, config)
    assert pa.total == pytest.approx(config.bs_power, rel=1e-9)
    levels = water_levels(ls, attack, config)
    active = pa.pd > 0
    eta = (pa.pd + levels)[active]
    np.testing.assert_allclose(eta, eta[0], rtol=1e-9)
    assert np.all(levels[~active] >= eta[0] * (1 - 1e-9))


def test_water_filling_beats_equal_split(config, ls):
    """Test that water-filling maximizes the large-M sum-rate it is computed for."""
    for attack in (AttackVector.none(config.users), AttackVector.single(config.users, 0)):
        water = asymptotic_rates(ls, attack, water_filling(ls, attack, config), config)
        equal = asymptotic_rates(ls, attack, uniform_allocation(config), config)
        assert water.sum_rate >= equal.sum_rate - 1e-9


def test_power_strategy_factory(config, ls):
    """Test that the factory returns the registered strategies."""
    assert isinstance(get_power_strategy(), FixedPower)
    assert isinstance(get_power_strategy("water-filling"), WaterFillingPower)
    assert get_power_strategy(PowerMode.WATER_FILLING).name == "water-filling"
    with pytest.raises(ValueError):
        get_power_strategy("proportional")

    attack = AttackVector.single(config.users, 1)
    fixed = FixedPower().allocate(ls, attack, config)
    np.testing.assert_allclose(fixed.pd, uniform_allocation(config).pd)
