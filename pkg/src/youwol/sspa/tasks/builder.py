"""Build configured task instances from the services.

Use build_task_<name>() to obtain a configured instance of a task.
"""

# typing
from typing import Optional

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds

# application services
from youwol.sspa.services import get_service_engine_limits, get_service_oracle_bounds, get_service_report

# relative
from .corpus import CorpusTask
from .verify import VerifyOptions, VerifyTask


def build_task_verify(
    options: VerifyOptions, limits: Optional[EngineLimits] = None, bounds: Optional[OracleBounds] = None
) -> VerifyTask:
    """Get a configured instance of VerifyTask.

    Args:
        options (VerifyOptions): what to check and what to produce
        limits (Optional[EngineLimits]): the saturation limits, from the environment when None
        bounds (Optional[OracleBounds]): the oracle bounds, from the environment when None

    Returns:
        VerifyTask: the task
    """
    return VerifyTask(
        report=get_service_report()(),
        limits=limits if limits is not None else get_service_engine_limits()(),
        bounds=bounds if bounds is not None else get_service_oracle_bounds()(),
        options=options,
    )


def build_task_corpus(
    names: tuple[str, ...] = (),
    oracle: bool = False,
    limits: Optional[EngineLimits] = None,
    bounds: Optional[OracleBounds] = None,
) -> CorpusTask:
    """Get a configured instance of CorpusTask.

    Args:
        names (tuple[str, ...]): the corpus models to run, all when empty
        oracle (bool): cross-check with the ground oracle
        limits (Optional[EngineLimits]): the saturation limits, from the environment when None
        bounds (Optional[OracleBounds]): the oracle bounds, from the environment when None

    Returns:
        CorpusTask: the task
    """
    return CorpusTask(
        report=get_service_report()(),
        limits=limits if limits is not None else get_service_engine_limits()(),
        bounds=bounds if bounds is not None else get_service_oracle_bounds()(),
        names=names,
        oracle=oracle,
    )
