"""Reserved facts, N membership and composition pivots."""

# standard library
from enum import Enum

# application terms
from youwol.sspa.terms import occurs

# relative
from .facts import Event, Fact
from .rule import Rule, knowledge_premise_variable


class FactClass(Enum):
    IN_N_EVENT = "event"
    IN_N_SINGLETON = "singleton"
    REGULAR = "regular"


def is_singleton(fact: Fact, rule: Rule) -> bool:
    """k(v) where v occurs in no other premise and not in the conclusion; states may mention v."""
    variable = knowledge_premise_variable(fact)
    if variable is None:
        return False
    for other in rule.premises:
        if other != fact and any(occurs(variable, arg) for arg in other.args):
            return False
    if isinstance(rule.conclusion, frozenset):
        for conversion in rule.conclusion:
            states = [conversion.post] if conversion.pre is None else [conversion.pre, conversion.post]
            if any(occurs(variable, arg) for state in states for arg in state.args):
                return False
        return True
    return not any(occurs(variable, arg) for arg in rule.conclusion.args)


def classify_fact(fact: Fact, rule: Rule) -> FactClass:
    """Classify a premise of a rule.

    Args:
        fact (Fact): a premise of rule
        rule (Rule): the rule

    Returns:
        FactClass: IN_N_EVENT for events, IN_N_SINGLETON for singletons, REGULAR otherwise
    """
    if isinstance(fact, Event):
        return FactClass.IN_N_EVENT
    if is_singleton(fact, rule):
        return FactClass.IN_N_SINGLETON
    return FactClass.REGULAR


def is_reserved(fact: Fact, rule: Rule) -> bool:
    """Events, singletons and any k(v) with v a placeholder."""
    return classify_fact(fact, rule) != FactClass.REGULAR or knowledge_premise_variable(fact) is not None


def all_reserved(rule: Rule) -> bool:
    return all(is_reserved(fact, rule) for fact in rule.premises)


def all_in_n(rule: Rule) -> bool:
    """Every premise is an event or a singleton; k(v) with v tied to another fact does not count."""
    return all(classify_fact(fact, rule) != FactClass.REGULAR for fact in rule.premises)


def is_pivot(fact: Fact, rule: Rule) -> bool:
    """Premises composition may supply.

    k(v) with v tied to another fact is supplied only last: when the rule concludes an event and every other premise
    outside N is of that form too.
    """
    if classify_fact(fact, rule) != FactClass.REGULAR:
        return False
    if knowledge_premise_variable(fact) is None:
        return True
    return rule.concludes_event and all(
        knowledge_premise_variable(other) is not None
        for other in rule.premises
        if classify_fact(other, rule) == FactClass.REGULAR
    )
