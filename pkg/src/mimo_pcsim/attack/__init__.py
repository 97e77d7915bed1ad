"""Attacker sum-rate problems and the BS power strategies they play against."""

from mimo_pcsim.attack.game import check_saddle, solve_p3_gauss_seidel
from mimo_pcsim.attack.pilot import (
    SumRateObjective,
    optimal_pilot_attack,
    p1_coefficients,
    p1_objective,
    solve_p1_closed_form,
    solve_p1_numeric,
)
from mimo_pcsim.attack.power import (
    FixedPower,
    PowerMode,
    WaterFillingPower,
    get_power_strategy,
    uniform_allocation,
    water_filling,
)
from mimo_pcsim.attack.stochastic import evpi, expected_sum_rate, information_gap, solve_p2

__all__ = [
    "FixedPower",
    "PowerMode",
    "SumRateObjective",
    "WaterFillingPower",
    "check_saddle",
    "evpi",
    "expected_sum_rate",
    "get_power_strategy",
    "information_gap",
    "optimal_pilot_attack",
    "p1_coefficients",
    "p1_objective",
    "solve_p1_closed_form",
    "solve_p1_numeric",
    "solve_p2",
    "solve_p3_gauss_seidel",
    "uniform_allocation",
    "water_filling",
]
