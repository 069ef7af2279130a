"""Textual form of rules and models, in the syntax read by parse_spec."""

# typing
from typing import Optional

# application model
from youwol.sspa.model import Conversion, Rule, StateAtom, sorted_mappings, sorted_pairs

# relative
from .model_file import Model


def _has_default_annotations(rule: Rule) -> bool:
    default_mappings = {(fact, state) for fact in rule.premises for state in rule.states}
    default_orderings = {(left, right) for left in rule.states for right in rule.states}
    return rule.mappings == default_mappings and rule.orderings == default_orderings


def _conversion(conversion: Conversion) -> str:
    pre = str(conversion.pre) if conversion.pre is not None else ""
    return f"<{pre}, {conversion.post}>"


def rule_body(rule: Rule) -> str:
    """Everything after `rule <name>:`, without the final semicolon."""
    premises = rule.sorted_premises()
    states = rule.sorted_states()
    if isinstance(rule.conclusion, frozenset):
        conclusion = ", ".join(_conversion(conversion) for conversion in rule.sorted_conversions())
    else:
        conclusion = str(rule.conclusion)

    head = ", ".join(str(fact) for fact in premises)
    if not states:
        return f"{head} => {conclusion}".strip()
    if _has_default_annotations(rule):
        return f"{head} => {', '.join(str(state) for state in states)} -> {conclusion}".strip()

    labels: dict[StateAtom, str] = {state: f"L{index}" for index, state in enumerate(states, start=1)}
    positions = {fact: index for index, fact in enumerate(premises, start=1)}
    # annotations on facts or states the rule no longer has are not printed
    mappings = ", ".join(
        f"<{positions[fact]}, ^{labels[state]}>"
        for fact, state in sorted_mappings(rule.mappings)
        if fact in positions and state in labels
    )
    orderings = ", ".join(
        f"^{labels[lower]} <= ^{labels[upper]}"
        for lower, upper in sorted_pairs(rule.orderings)
        if lower in labels and upper in labels
    )
    labelled = ", ".join(f"{state}^{labels[state]}" for state in states)
    return f"{head} : {{{mappings}}} => {labelled} : {{{orderings}}} -> {conclusion}".strip()


def serialize_rule(rule: Rule, name: Optional[str] = None) -> str:
    """Serialize a rule as a `rule` statement.

    State labels `^L1`, `^L2`, ... are generated only when the mappings or orderings differ from the defaults.

    Args:
        rule (Rule): the rule
        name (Optional[str]): the statement name, defaults to the rule name or `r<id>`

    Returns:
        str: the statement, parsable against the declarations of its model
    """
    if name is None:
        name = rule.name or (f"r{rule.rule_id}" if rule.rule_id is not None else "rule")
    return f"rule {name}: {rule_body(rule)};"


def serialize_model(model: Model) -> str:
    lines = [str(declaration) for declaration in model.declarations]
    lines.extend(serialize_rule(rule) for rule in model.rules)
    lines.extend(str(pattern) for pattern in model.access)
    lines.extend(f"query {query.name}: {rule_body(query.rule)};" for query in model.queries)
    return "\n".join(lines) + "\n"
