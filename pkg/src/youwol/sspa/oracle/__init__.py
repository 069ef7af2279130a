"""Bounded ground-semantics executor, used to cross-check verdicts."""

# relative
from .ground import (
    BoundHit,
    GroundConfig,
    GroundExecutor,
    GroundStep,
    OracleResult,
    Reachable,
    Unreachable,
    ground_reachable,
    initial_states,
)
from .replay import ReplayResult, replay_trace, replay_witness
from .world import Deduction, World, ground_rule, ground_term, is_constructor
