"""Manage services instances.

Use get_<service>_builder() to obtain a nullary builder for a service.

Notes:
    It is possible to overload the definition of any service by using the context object before calling builders.
"""

# typing
from typing import Callable, Optional

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds, Settings, env_utils

# relative
from .reporting.reporting import Report, Reporting


class Context:
    """Hold services instances."""

    report: Optional[Report] = None
    engine_limits: Optional[EngineLimits] = None
    oracle_bounds: Optional[OracleBounds] = None


context = Context()


def get_report_builder(verbose: bool = False) -> Callable[[], Report]:
    """Get a nullary builder for a configured instance of the report service.

    Args:
        verbose (bool): also report DEBUG lines.

    Returns:
        Callable[[], Report]: a nullary builder for the report service.
    """
    if context.report is not None:
        report = context.report
        return lambda: report

    def builder() -> Report:
        if context.report is None:
            path_log_file = env_utils.maybe_path(Settings.SSPA_LOG_FILE)

            context.report = Reporting(
                initial_task="sspa",
                path_log_file=path_log_file,
                min_level="DEBUG" if verbose else "NOTIFY",
            ).get_root_report()

        return context.report

    return builder


def get_limits_builder() -> Callable[[], EngineLimits]:
    """Get a nullary builder for the saturation engine limits.

    Returns:
        Callable[[], EngineLimits]: a nullary builder for the limits, read from the environment.
    """
    if context.engine_limits is not None:
        engine_limits = context.engine_limits
        return lambda: engine_limits

    def builder() -> EngineLimits:
        if context.engine_limits is None:
            context.engine_limits = EngineLimits.from_env()

        return context.engine_limits

    return builder


def get_bounds_builder() -> Callable[[], OracleBounds]:
    """Get a nullary builder for the ground oracle bounds.

    Returns:
        Callable[[], OracleBounds]: a nullary builder for the bounds, read from the environment.
    """
    if context.oracle_bounds is not None:
        oracle_bounds = context.oracle_bounds
        return lambda: oracle_bounds

    def builder() -> OracleBounds:
        if context.oracle_bounds is None:
            context.oracle_bounds = OracleBounds.from_env()

        return context.oracle_bounds

    return builder
