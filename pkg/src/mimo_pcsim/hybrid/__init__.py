"""Pilot contamination combined with data-phase jamming."""

from mimo_pcsim.hybrid.saa import (
    HybridModel,
    PolicyEvaluation,
    budget_usage,
    evaluate_policy_out_of_sample,
    hybrid_information_gap,
    hybrid_objective,
    jamming_budget,
    jamming_gains,
    pilot_budget_max,
    solve_data_only,
    solve_p6_saa,
)
from mimo_pcsim.hybrid.scenarios import build_scenarios

__all__ = [
    "HybridModel",
    "PolicyEvaluation",
    "budget_usage",
    "build_scenarios",
    "evaluate_policy_out_of_sample",
    "hybrid_information_gap",
    "hybrid_objective",
    "jamming_budget",
    "jamming_gains",
    "pilot_budget_max",
    "solve_data_only",
    "solve_p6_saa",
]
