"""Bounded breadth-first reachability over ground configurations.

An independent executor of the rules: the adversary knowledge is a set of ground terms, the protocol state a set of
ground object states, and rule instances are enumerated by matching. Consistent rules that generate no fresh value
are applied to fixpoint after every transition; the other rules are transitions.
"""

# standard library
from collections import deque
from dataclasses import dataclass

# typing
from typing import Iterator, Optional, Union

# application configuration
from youwol.sspa.configuration import OracleBounds

# application services
from youwol.sspa.services import Report, silent_report

# application terms
from youwol.sspa.terms import Nonce, Substitution, Term, occurs

# application model
from youwol.sspa.model import AccessPattern, Event, Knowledge, Rule, StateAtom
from youwol.sspa.parser import Model

# relative
from .world import (
    ADVERSARY_NAME,
    Deduction,
    World,
    add_fact,
    ground_term,
    is_constructor,
    recorded_events,
    with_events,
)


@dataclass(frozen=True, kw_only=True)
class GroundConfig:
    """Bounds and starting point of an exploration."""

    nonce_pool: int = 2
    max_depth: int = 6
    max_steps: int = 10_000
    initial_states: tuple[StateAtom, ...] = ()

    def __post_init__(self) -> None:
        if min(self.nonce_pool, self.max_depth, self.max_steps) <= 0:
            raise ValueError(f"Ground bounds must be positive, got {self}")

    @staticmethod
    def from_bounds(model: Model, bounds: Optional[OracleBounds] = None) -> "GroundConfig":
        """Bounds from the oracle settings, one initial state per access pattern.

        Args:
            model (Model): the model; its access patterns give the initial states
            bounds (Optional[OracleBounds]): the bounds, defaults when None

        Returns:
            GroundConfig: the configuration
        """
        bounds = bounds if bounds is not None else OracleBounds()
        return GroundConfig(
            nonce_pool=bounds.nonce_pool,
            max_depth=bounds.max_depth,
            max_steps=bounds.max_steps,
            initial_states=initial_states(model.access),
        )


def initial_states(patterns: list[AccessPattern]) -> tuple[StateAtom, ...]:
    """Ground each access pattern, one object per key; placeholders become constants."""
    states: dict[tuple, StateAtom] = {}
    for pattern in patterns:
        state = StateAtom(
            pattern.pattern.name,
            tuple(ground_term(arg) for arg in pattern.pattern.args),
            pattern.pattern.key_positions,
        )
        states.setdefault(state.key, state)
    return tuple(states.values())


@dataclass(frozen=True)
class GroundStep:
    rule_name: str
    instance: Rule


@dataclass(frozen=True)
class Reachable:
    trace: tuple[GroundStep, ...]
    event: Event
    explored: int = 0
    status: str = "Reachable"


@dataclass(frozen=True)
class Unreachable:
    explored: int = 0
    status: str = "Unreachable"


@dataclass(frozen=True)
class BoundHit:
    explored: int = 0
    bounds: tuple[str, ...] = ()
    status: str = "BoundHit"


OracleResult = Union[Reachable, Unreachable, BoundHit]


@dataclass
class _Node:
    world: World
    counters: dict[str, int]
    parent: Optional["_Node"] = None
    step: Optional[GroundStep] = None

    def trace(self) -> tuple[GroundStep, ...]:
        steps: list[GroundStep] = []
        node: Optional[_Node] = self
        while node is not None:
            if node.step is not None:
                steps.append(node.step)
            node = node.parent
        return tuple(reversed(steps))


class GroundExecutor:
    """Apply the rules of a model to ground configurations."""

    def __init__(self, model: Model, config: GroundConfig):
        self._config = config
        rules = model.initial_rules()
        self.deduction = Deduction(rules, config.max_depth)
        self._eager = [
            rule
            for rule in rules
            if rule.is_consistent and not is_constructor(rule) and self._generates_nothing(rule)
        ]
        self.transitions = [rule for rule in rules if rule.is_transferring or not self._generates_nothing(rule)]
        self.hits: set[str] = set()

    @staticmethod
    def _generates_nothing(rule: Rule) -> bool:
        read = _read_terms(rule)
        return all(any(occurs(nonce, term) for term in read) for nonce in rule.nonces())

    def initial_world(self, states: tuple[StateAtom, ...], knowledge: tuple = ()) -> World:
        return self.close(World(frozenset({ADVERSARY_NAME, *knowledge}), frozenset(), frozenset(states)))

    def close(self, world: World) -> World:
        """Apply the consistent rules generating no fresh value until nothing new is derived."""
        changed = True
        while changed:
            changed = False
            for rule in self._eager:
                for sigma in list(self.deduction.matches(rule, world)):
                    instance = rule.apply(sigma)
                    if self.deduction.too_deep(instance):
                        self.hits.add("depth")
                        continue
                    fact = instance.conclusion_fact
                    if fact in world.events or (isinstance(fact, Knowledge) and fact.term in world.knowledge):
                        continue
                    recorded = recorded_events(instance, world)
                    if recorded is None:
                        continue
                    world = add_fact(with_events(world, recorded), fact)
                    changed = True
        return world

    def fire(self, rule: Rule, sigma: Substitution, world: World, counters: dict[str, int]) -> Optional[tuple]:
        """Apply one transition instance.

        Returns:
            Optional[tuple]: the new world, counters and ground instance, None when the instance is not applicable
        """
        fresh = self.deduction.fresh_nonces(rule, sigma)
        counters = dict(counters)
        bindings = dict(sigma)
        for nonce in fresh:
            used = counters.get(nonce.name, 0)
            if used >= self._config.nonce_pool:
                self.hits.add("nonce_pool")
                return None
            counters[nonce.name] = used + 1
            bindings[nonce] = Nonce(nonce.name, used + 1)
        instance = rule.apply(Substitution(bindings, normalize=False))
        if self.deduction.too_deep(instance):
            self.hits.add("depth")
            return None
        recorded = recorded_events(instance, world)
        if recorded is None:
            return None
        world = with_events(world, recorded)
        if instance.is_consistent:
            return self.close(add_fact(world, instance.conclusion_fact)), counters, instance
        states = set(world.states)
        for conversion in instance.sorted_conversions():
            if conversion.pre is None:
                if world.state_of(conversion.post.key) is not None:
                    return None
            else:
                states.discard(conversion.pre)
            states.add(conversion.post)
        return self.close(World(world.knowledge, world.events, frozenset(states))), counters, instance

    def successors(self, world: World, counters: dict[str, int]) -> Iterator[tuple[Rule, tuple]]:
        for rule in self.transitions:
            for sigma in self.deduction.matches(rule, world):
                fired = self.fire(rule, sigma, world, counters)
                if fired is not None:
                    yield rule, fired


def _read_terms(rule: Rule) -> list[Term]:
    terms = [fact.term for fact in rule.premises if isinstance(fact, Knowledge)]
    terms += [arg for state in rule.sorted_states() + rule.pre_states() for arg in state.args]
    return terms


def _reached(world: World, event: str) -> Optional[Event]:
    return next((fact for fact in sorted(world.events, key=str) if fact.name == event), None)


def ground_reachable(
    model: Model, event: str, config: Optional[GroundConfig] = None, report: Optional[Report] = None
) -> OracleResult:
    """Search a trace reaching an event, breadth first.

    Args:
        model (Model): the model
        event (str): the event name
        config (Optional[GroundConfig]): bounds and initial states, from default bounds when None
        report (Optional[Report]): the report

    Returns:
        OracleResult: Reachable with a shortest trace, Unreachable when the bounded space was exhausted without any
            bound cutting it, BoundHit otherwise
    """
    config = config if config is not None else GroundConfig.from_bounds(model)
    report = (report if report is not None else silent_report()).get_sub_report(
        "GroundOracle", init_status="ComponentInitialized"
    )
    producers = [rule for rule in model.initial_rules() if isinstance(rule.conclusion, Event)]
    if not any(rule.conclusion.name == event for rule in producers):  # type: ignore[union-attr]
        report.set_status("Done")
        return Unreachable()

    executor = GroundExecutor(model, config)
    start = _Node(executor.initial_world(config.initial_states), {})
    queue: deque[_Node] = deque([start])
    visited = {start.world.signature()}
    explored = 0
    while queue:
        node = queue.popleft()
        reached = _reached(node.world, event)
        if reached is not None:
            report.notify(f"{event} reached after {explored} configurations")
            report.set_status("Done")
            return Reachable(node.trace(), reached, explored)
        if explored >= config.max_steps:
            executor.hits.add("steps")
            break
        explored += 1
        for rule, (world, counters, instance) in executor.successors(node.world, node.counters):
            if world.signature() in visited:
                continue
            visited.add(world.signature())
            queue.append(_Node(world, counters, node, GroundStep(rule.name, instance)))

    report.set_status("Done")
    if executor.hits:
        report.notify(f"{event} not reached within bounds ({', '.join(sorted(executor.hits))})")
        return BoundHit(explored, tuple(sorted(executor.hits)))
    return Unreachable(explored)
