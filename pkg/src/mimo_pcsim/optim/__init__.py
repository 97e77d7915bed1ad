"""Solver plumbing shared by the attack problems."""

from mimo_pcsim.optim.gradient import GradientResult, projected_gradient
from mimo_pcsim.optim.quadrature import AnnulusGrid
from mimo_pcsim.optim.simplex import (
    project_capped_simplex,
    project_simplex,
    project_simplex_rows,
)

__all__ = [
    "AnnulusGrid",
    "GradientResult",
    "project_capped_simplex",
    "project_simplex",
    "project_simplex_rows",
    "projected_gradient",
]
