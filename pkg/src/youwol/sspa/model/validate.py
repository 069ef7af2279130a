"""Rule validation: merge what must be equal, drop what carries no information, until nothing changes."""

# standard library
from collections import defaultdict
from dataclasses import replace

# application terms
from youwol.sspa.terms import EMPTY, NoUnifier, Substitution, is_placeholder, unify_all

# relative
from .classify import FactClass, classify_fact
from .errors import InvalidRule
from .facts import Event, StateAtom, fact_bindables, fact_sort_key, state_bindables, state_sort_key
from .orderings import closure
from .rule import Rule


def _events_unifier(rule: Rule) -> Substitution:
    by_key: dict[tuple, list[Event]] = defaultdict(list)
    for fact in rule.sorted_premises():
        if isinstance(fact, Event):
            by_key[fact.key].append(fact)
    pairs = [
        (events[0].args[i], other.args[i])
        for events in by_key.values()
        for other in events[1:]
        for i in range(len(other.args))
        if len(other.args) == len(events[0].args)
    ]
    if not pairs:
        return EMPTY
    try:
        return unify_all(pairs)
    except NoUnifier as error:
        raise InvalidRule(str(rule), f"events sharing a key do not unify ({error})") from error


def _cycles_unifier(rule: Rule) -> Substitution:
    closed = closure(rule.orderings, rule.states)
    pairs = []
    for left, right in sorted(closed, key=lambda pair: (state_sort_key(pair[0]), state_sort_key(pair[1]))):
        if left != right and left.key == right.key and (right, left) in closed:
            pairs.extend(zip(left.args, right.args))
    if not pairs:
        return EMPTY
    try:
        return unify_all(pairs)
    except NoUnifier as error:
        raise InvalidRule(str(rule), f"states used at the same time do not unify ({error})") from error


def _clear(rule: Rule) -> Rule:
    singletons = {fact for fact in rule.premises if classify_fact(fact, rule) == FactClass.IN_N_SINGLETON}
    if not singletons:
        return rule
    return replace(rule, premises=rule.premises - singletons)


def _is_unconstrained(state: StateAtom) -> bool:
    return all(is_placeholder(arg) for arg in state.args) and len(set(state.args)) == len(state.args)


def _is_isolated(state: StateAtom, rule: Rule) -> bool:
    """A state that says nothing beyond "some object of this kind exists" in a rule concluding states."""
    if rule.concludes_event or not _is_unconstrained(state):
        return False
    if any(mapped == state for _, mapped in rule.mappings):
        return False
    if any(left != right and state in (left, right) for left, right in rule.orderings):
        return False
    if any(conversion.pre == state for conversion in rule.conversions):
        return False
    shared = set()
    for fact in rule.premises:
        shared |= fact_bindables(fact)
    for other in rule.states:
        if other != state:
            shared |= state_bindables(other)
    if isinstance(rule.conclusion, frozenset):
        for conversion in rule.conclusion:
            shared |= state_bindables(conversion.post)
            if conversion.pre is not None:
                shared |= state_bindables(conversion.pre)
    else:
        shared |= fact_bindables(rule.conclusion)
    return not state_bindables(state) & shared


def _elim(rule: Rule) -> Rule:
    isolated = {state for state in rule.states if _is_isolated(state, rule)}
    if not isolated:
        return rule
    return replace(rule, states=rule.states - isolated)


def _rm(rule: Rule) -> Rule:
    mappings = frozenset(
        (fact, state) for fact, state in rule.mappings if fact in rule.premises and state in rule.states
    )
    orderings = frozenset(
        (left, right) for left, right in rule.orderings if left in rule.states and right in rule.states
    )
    if mappings == rule.mappings and orderings == rule.orderings:
        return rule
    return replace(rule, mappings=mappings, orderings=orderings)


def validate_with_sigma(rule: Rule) -> tuple[Rule, Substitution]:
    """Validate a rule and return the substitution validation applied.

    Args:
        rule (Rule): the rule

    Returns:
        tuple[Rule, Substitution]: the validated rule and the accumulated unifier

    Raises:
        InvalidRule: if events sharing a key, or states of one object at the same time, do not unify
    """
    sigma = EMPTY
    current = _rm(rule)
    while True:
        step = _events_unifier(current)
        if step:
            current, sigma = current.apply(step), step.compose(sigma)
            continue
        step = _cycles_unifier(current)
        if step:
            current, sigma = current.apply(step), step.compose(sigma)
            continue
        reduced = _rm(_elim(_rm(_clear(current))))
        if reduced == current:
            return current, Substitution(dict(sigma))
        current = reduced


def validate(rule: Rule) -> Rule:
    """Validated form of a rule (see validate_with_sigma)."""
    return validate_with_sigma(rule)[0]


def canonical_key(rule: Rule) -> tuple:
    """Deterministic key used to sort rules; not invariant under renaming."""
    return (
        tuple(fact_sort_key(fact) for fact in rule.sorted_premises()),
        tuple(state_sort_key(state) for state in rule.sorted_states()),
        str(rule),
    )
