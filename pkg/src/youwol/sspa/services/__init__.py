"""Services shared by the verifier components.

Use get_service_<name>() to obtain a nullary builder for a service.
"""

# relative
from .builder import context
from .builder import get_bounds_builder as get_service_oracle_bounds
from .builder import get_limits_builder as get_service_engine_limits
from .builder import get_report_builder as get_service_report
from .reporting import Report, silent_report

__all__ = [
    "context",
    "get_service_oracle_bounds",
    "get_service_engine_limits",
    "get_service_report",
    "Report",
    "silent_report",
]
