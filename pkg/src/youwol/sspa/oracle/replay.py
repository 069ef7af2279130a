"""Replay of traces in the ground semantics: attack witnesses, and the traces the oracle itself returns."""

# standard library
from dataclasses import dataclass

# typing
from typing import Iterable, Optional

# application model
from youwol.sspa.model import Event, Knowledge, Rule, StateAtom
from youwol.sspa.parser import Model

# application engine
from youwol.sspa.query import DerivationTree

# relative
from .ground import GroundConfig, GroundExecutor, Reachable
from .world import World, add_fact, ground_rule, ground_term, recorded_events, with_events


@dataclass(frozen=True)
class ReplayResult:
    reached: bool
    steps: int
    failed_step: Optional[int] = None
    reason: str = ""


def _missing(instance: Rule, world: World, executor: GroundExecutor) -> Optional[str]:
    for fact in instance.sorted_premises():
        if isinstance(fact, Knowledge) and not executor.deduction.derivable(fact.term, world):
            return f"{fact.term} is not known"
    for state in instance.sorted_states() + instance.pre_states():
        if state not in world.states:
            return f"state {state} is not current"
    for conversion in instance.sorted_conversions():
        if conversion.pre is None and world.state_of(conversion.post.key) is not None:
            return f"{conversion.post} already exists"
    if recorded_events(instance, world) is None:
        return "an event premise clashes with a recorded event of the same key"
    return None


def _apply(instance: Rule, world: World, executor: GroundExecutor) -> World:
    world = with_events(world, recorded_events(instance, world) or frozenset())
    if instance.is_consistent:
        return executor.close(add_fact(world, instance.conclusion_fact))
    states = set(world.states)
    for conversion in instance.sorted_conversions():
        if conversion.pre is not None:
            states.discard(conversion.pre)
        states.add(conversion.post)
    return executor.close(World(world.knowledge, world.events, frozenset(states)))


def _replay(
    executor: GroundExecutor, world: World, instances: Iterable[Rule], event: Event
) -> ReplayResult:
    count = 0
    for count, instance in enumerate(instances, start=1):
        reason = _missing(instance, world, executor)
        if reason is not None:
            return ReplayResult(False, count - 1, count, reason)
        world = _apply(instance, world, executor)
    if event not in world.events:
        return ReplayResult(False, count, None, f"{event} did not happen")
    return ReplayResult(True, count)


def replay_witness(model: Model, tree: DerivationTree, config: Optional[GroundConfig] = None) -> ReplayResult:
    """Execute the linear trace of a derivation tree on ground states.

    Placeholders left in the trace become constants. Those the adversary supplies directly, as premises no rule
    produces, are added to its initial knowledge.

    Args:
        model (Model): the model the tree was derived in
        tree (DerivationTree): the tree
        config (Optional[GroundConfig]): the bounds; its initial states are ignored

    Returns:
        ReplayResult: whether the event was reached, and otherwise the first step that could not be applied
    """
    config = config if config is not None else GroundConfig()
    executor = GroundExecutor(model, config)
    chosen = [
        ground_term(edge.label.term)
        for edge in tree.edges()
        if edge.child is None and isinstance(edge.label, Knowledge)
    ]
    states = tuple(
        StateAtom(state.name, tuple(ground_term(arg) for arg in state.args), state.key_positions)
        for state in tree.initial_states
    )
    world = executor.initial_world(states, tuple(chosen))
    event = Event(tree.event.name, tuple(ground_term(arg) for arg in tree.event.args), tree.event.key_positions)
    return _replay(executor, world, (ground_rule(step.instance) for step in tree.steps), event)


def replay_trace(model: Model, reachable: Reachable, config: GroundConfig) -> ReplayResult:
    """Execute an oracle trace again from the initial states of config."""
    executor = GroundExecutor(model, config)
    world = executor.initial_world(config.initial_states)
    return _replay(executor, world, (step.instance for step in reachable.trace), reachable.event)
