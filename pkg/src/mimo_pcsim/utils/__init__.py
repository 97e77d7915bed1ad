"""Utility functions and helpers."""

from mimo_pcsim.utils.log_config import setup_logging
from mimo_pcsim.utils.rng import derive_rng

__all__ = ["derive_rng", "setup_logging"]
