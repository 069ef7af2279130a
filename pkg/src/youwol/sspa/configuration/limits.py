"""Bounds of the saturation engine and of the ground oracle."""

# standard library
import dataclasses

from dataclasses import dataclass

# typing
from typing import Any

# relative
from . import env_utils
from .env_vars import SspaEnvironmentVars as Env


@dataclass(frozen=True, kw_only=True)
class EngineLimits:
    """Limits of a saturation run.

    Exceeding max_rules, max_term_depth or timeout truncates the run; max_partition bounds cover-set enumeration.
    """

    max_rules: int = 50_000
    timeout: float = 3600.0
    max_term_depth: int = 14
    max_partition: int = 8
    transform_knowledge: bool = False
    closure_aware_implies: bool = True

    @staticmethod
    def from_env() -> "EngineLimits":
        """Build limits from SSPA_* environment variables, with class defaults for unset ones.

        Returns:
            EngineLimits: the limits.
        """
        defaults = EngineLimits()
        return EngineLimits(
            max_rules=env_utils.integer(Env.SSPA_MAX_RULES, defaults.max_rules),
            timeout=env_utils.positive_float(Env.SSPA_TIMEOUT, defaults.timeout),
            max_term_depth=env_utils.integer(Env.SSPA_MAX_TERM_DEPTH, defaults.max_term_depth),
            max_partition=env_utils.integer(Env.SSPA_MAX_PARTITION, defaults.max_partition),
            transform_knowledge=env_utils.boolean(Env.SSPA_TRANSFORM_KNOWLEDGE, defaults.transform_knowledge),
            closure_aware_implies=env_utils.boolean(Env.SSPA_CLOSURE_AWARE_IMPLIES, defaults.closure_aware_implies),
        )

    def with_overrides(self, **overrides: Any) -> "EngineLimits":
        """Copy these limits, replacing the fields given with a value other than None.

        Args:
            **overrides: field values, None meaning 'keep'.

        Returns:
            EngineLimits: the new limits.
        """
        return dataclasses.replace(self, **{key: value for key, value in overrides.items() if value is not None})


@dataclass(frozen=True, kw_only=True)
class OracleBounds:
    """Bounds of the ground oracle exploration."""

    nonce_pool: int = 2
    max_depth: int = 6
    max_steps: int = 10_000

    def __post_init__(self) -> None:
        if min(self.nonce_pool, self.max_depth, self.max_steps) <= 0:
            raise ValueError(f"Oracle bounds must be positive, got {self}")

    @staticmethod
    def from_env() -> "OracleBounds":
        """Build bounds from SSPA_ORACLE_* environment variables.

        Returns:
            OracleBounds: the bounds.
        """
        defaults = OracleBounds()
        return OracleBounds(
            nonce_pool=env_utils.integer(Env.SSPA_ORACLE_POOL, defaults.nonce_pool),
            max_depth=env_utils.integer(Env.SSPA_ORACLE_DEPTH, defaults.max_depth),
            max_steps=env_utils.integer(Env.SSPA_ORACLE_STEPS, defaults.max_steps),
        )

    def with_overrides(self, **overrides: Any) -> "OracleBounds":
        """Copy these bounds, replacing the fields given with a value other than None.

        Args:
            **overrides: field values, None meaning 'keep'.

        Returns:
            OracleBounds: the new bounds.
        """
        return dataclasses.replace(self, **{key: value for key, value in overrides.items() if value is not None})
