"""Ground configurations and the rule instances enabled in them."""

# standard library
import itertools

from dataclasses import dataclass

# typing
from typing import Iterator, Optional

# application terms
from youwol.sspa.terms import (
    Function,
    Name,
    Nonce,
    Placeholder,
    Substitution,
    Term,
    is_placeholder,
    match,
    placeholders,
    term_key,
)

# application model
from youwol.sspa.model import Event, Fact, Knowledge, Rule, StateAtom, fact_sort_key, state_sort_key

ADVERSARY_NAME = Name("adv")


@dataclass(frozen=True)
class World:
    """What the adversary knows, the events that happened and the current object states."""

    knowledge: frozenset[Term]
    events: frozenset[Event]
    states: frozenset[StateAtom]

    def state_of(self, key: tuple) -> Optional[StateAtom]:
        return next((state for state in self.states if state.key == key), None)

    def signature(self) -> tuple:
        return (self.knowledge, self.events, self.states)


def is_constructor(rule: Rule) -> bool:
    """k(x1), ..., k(xn) => k(f(x1, ..., xn)) with distinct placeholders and no state."""
    if rule.states or rule.is_transferring or not isinstance(rule.conclusion, Knowledge):
        return False
    term = rule.conclusion.term
    if not isinstance(term, Function) or not term.args:
        return False
    arguments = list(term.args)
    if not all(is_placeholder(arg) for arg in arguments) or len(set(arguments)) != len(arguments):
        return False
    return rule.premises == frozenset(Knowledge(arg) for arg in arguments)


def ground_name(placeholder: Placeholder) -> Name:
    """The constant standing for a placeholder nothing constrains."""
    return Name(f"{placeholder.name}0")


def ground_term(term: Term) -> Term:
    if isinstance(term, Function):
        return Function(term.symbol, tuple(ground_term(arg) for arg in term.args))
    if is_placeholder(term):
        return ground_name(term)  # type: ignore[arg-type]
    return term


def ground_rule(rule: Rule) -> Rule:
    sigma = Substitution({placeholder: ground_name(placeholder) for placeholder in _rule_placeholders(rule)})
    return rule.apply(sigma)


def _rule_placeholders(rule: Rule) -> set[Placeholder]:
    result: set[Placeholder] = set()
    for term in rule.terms():
        result |= placeholders(term)
    return result


class Deduction:
    """Instances of rules over a world.

    Constructor rules are never applied: a term is derivable when it is known, or built by a constructor from
    derivable terms.
    """

    def __init__(self, rules: list[Rule], max_depth: int):
        self.constructors = {
            (rule.conclusion.term.symbol, len(rule.conclusion.term.args))  # type: ignore[union-attr]
            for rule in rules
            if is_constructor(rule)
        }
        self.max_depth = max_depth

    def derivable(self, term: Term, world: World) -> bool:
        if term in world.knowledge:
            return True
        if isinstance(term, Function) and (term.symbol, len(term.args)) in self.constructors:
            return all(self.derivable(arg, world) for arg in term.args)
        return False

    def _derivations(self, pattern: Term, sigma: Substitution, world: World) -> Iterator[Substitution]:
        seen: set[Substitution] = set()
        for known in sorted(world.knowledge, key=term_key):
            found = match(pattern, known, sigma)
            if found is not None and found not in seen:
                seen.add(found)
                yield found
        if isinstance(pattern, Function) and (pattern.symbol, len(pattern.args)) in self.constructors:
            for found in self._all_derivations(list(pattern.args), sigma, world):
                if found not in seen:
                    seen.add(found)
                    yield found

    def _all_derivations(self, patterns: list[Term], sigma: Substitution, world: World) -> Iterator[Substitution]:
        if not patterns:
            yield sigma
            return
        head, *rest = patterns
        for found in self._derivations(head, sigma, world):
            yield from self._all_derivations(rest, found, world)

    def _facts(self, facts: list[Fact], sigma: Substitution, world: World) -> Iterator[Substitution]:
        if not facts:
            yield sigma
            return
        head, *rest = facts
        if isinstance(head, Event):
            for event in sorted(world.events, key=fact_sort_key):
                if event.name != head.name or len(event.args) != len(head.args):
                    continue
                found = match(Function("", head.args), Function("", event.args), sigma)
                if found is not None:
                    yield from self._facts(rest, found, world)
            yield from self._facts(rest, sigma, world)
            return
        for found in self._derivations(head.term, sigma, world):
            yield from self._facts(rest, found, world)

    def _states(self, patterns: list[StateAtom], sigma: Substitution, world: World) -> Iterator[Substitution]:
        if not patterns:
            yield sigma
            return
        head, *rest = patterns
        for state in sorted(world.states, key=state_sort_key):
            found = match(head.as_term(), state.as_term(), sigma)
            if found is not None:
                yield from self._states(rest, found, world)

    def matches(self, rule: Rule, world: World) -> Iterator[Substitution]:
        """Substitutions grounding the premises and read states of a rule in a world.

        An event premise matches a recorded event, or is left to be recorded by the rule application. Placeholders
        the premises and states leave free range over the adversary knowledge.
        """
        read = rule.sorted_states() + rule.pre_states()
        premises = sorted(rule.premises, key=lambda fact: (not isinstance(fact, Knowledge), fact_sort_key(fact)))
        for sigma in self._states(read, Substitution(), world):
            for bound in self._facts(premises, sigma, world):
                free = sorted(_rule_placeholders(rule) - set(bound), key=term_key)
                if not free:
                    yield bound
                    continue
                known = sorted(world.knowledge, key=term_key)
                for values in itertools.product(known, repeat=len(free)):
                    yield Substitution({**bound, **dict(zip(free, values))}, normalize=False)

    def fresh_nonces(self, rule: Rule, sigma: Substitution) -> list[Nonce]:
        return sorted((nonce for nonce in rule.nonces() if nonce not in sigma), key=term_key)

    def too_deep(self, rule: Rule) -> bool:
        return rule.depth() > self.max_depth


def add_fact(world: World, fact: Fact) -> World:
    if isinstance(fact, Knowledge):
        return World(world.knowledge | {fact.term}, world.events, world.states)
    return World(world.knowledge, world.events | {fact}, world.states)


def recorded_events(instance: Rule, world: World) -> Optional[frozenset[Event]]:
    """The event premises of an instance the world has not recorded yet.

    Returns:
        Optional[frozenset[Event]]: the new events, None when one clashes with a recorded event of the same key
    """
    new: set[Event] = set()
    for fact in instance.sorted_premises():
        if not isinstance(fact, Event) or fact in world.events:
            continue
        if any(event.key == fact.key for event in world.events | new):
            return None
        new.add(fact)
    return frozenset(new)


def with_events(world: World, events: frozenset[Event]) -> World:
    return World(world.knowledge, world.events | events, world.states) if events else world
