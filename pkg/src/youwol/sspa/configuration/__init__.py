"""Configuration management."""

# relative
from . import env_utils
from .env_vars import SspaEnvironmentVars as Settings
from .limits import EngineLimits, OracleBounds

__all__ = ["Settings", "EngineLimits", "OracleBounds", "env_utils"]
