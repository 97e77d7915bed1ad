"""Configuration module."""

from mimo_pcsim.config.settings import Settings, get_settings
from mimo_pcsim.config.system import SystemConfig, dbm_to_linear

__all__ = ["Settings", "SystemConfig", "dbm_to_linear", "get_settings"]
