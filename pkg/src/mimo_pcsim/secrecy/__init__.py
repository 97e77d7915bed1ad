"""Attacks against the largest individual secrecy rate."""

from mimo_pcsim.secrecy.coefficients import (
    chance_constraint_lhs,
    chance_scale,
    secrecy_bound,
    secrecy_coefficients,
)
from mimo_pcsim.secrecy.solvers import (
    GreedyResult,
    greedy_level_descent,
    secrecy_objective,
    simplex_grid,
    solve_p4_bruteforce,
    solve_p5_chance,
    solve_p5_greedy,
)
from mimo_pcsim.secrecy.validation import ChanceValidation, validate_chance_solution

__all__ = [
    "ChanceValidation",
    "GreedyResult",
    "chance_constraint_lhs",
    "chance_scale",
    "greedy_level_descent",
    "secrecy_bound",
    "secrecy_coefficients",
    "secrecy_objective",
    "simplex_grid",
    "solve_p4_bruteforce",
    "solve_p5_chance",
    "solve_p5_greedy",
    "validate_chance_solution",
]
