"""Independent checks of derivation trees."""

# typing
from typing import Optional

# application terms
from youwol.sspa.terms import is_placeholder

# application model
from youwol.sspa.model import Conversion, Event, Knowledge, Rule, StateAtom, implies

# relative
from .errors import MalformedProvenance
from .trace import DerivationNode, DerivationTree, Edge


def _distinct_objects(states: tuple[StateAtom, ...]) -> bool:
    return len({state.key for state in states}) == len(states)


def _local_rule(node: DerivationNode, outgoing: Edge, tree: DerivationTree) -> Optional[Rule]:
    facts = [edge.label for edge in node.inputs if isinstance(edge.label, (Knowledge, Event))]
    if isinstance(outgoing.label, tuple):
        if not node.is_transferring:
            return None
        conversions: tuple[Conversion, ...] = outgoing.label
        pre_keys = {conversion.pre.key for conversion in conversions if conversion.pre is not None}
        unchanged = [state for state in tree.period_states[node.period] if state.key not in pre_keys]
        return Rule.with_defaults(facts, unchanged, frozenset(conversions))
    if node.is_transferring:
        return None
    return Rule.with_defaults(facts, outgoing.states, outgoing.label)


def tree_violations(tree: DerivationTree) -> list[str]:
    """List what keeps a tree from being a derivation of its event; empty for a valid tree.

    Args:
        tree (DerivationTree): the tree

    Returns:
        list[str]: one message per violation
    """
    violations: list[str] = []
    root_edge = tree.root_edge
    if root_edge.label != tree.event or root_edge.index != 1:
        violations.append(f"the root edge carries {root_edge.label} at index {root_edge.index}, not {tree.event} at 1")

    states_at: dict[int, tuple[StateAtom, ...]] = {}
    for edge in tree.edges():
        if not _distinct_objects(edge.states):
            violations.append(f"two states of one object on an edge at index {edge.index}")
        known = states_at.setdefault(edge.index, edge.states)
        if set(known) != set(edge.states):
            violations.append(f"edges at index {edge.index} carry different states")

    pending: list[tuple[DerivationNode, Edge]] = [(tree.root, root_edge)]
    while pending:
        node, outgoing = pending.pop()
        local = _local_rule(node, outgoing, tree)
        if local is None:
            violations.append(f"{node.rule_name} does not produce {outgoing.label}")
        elif not implies(node.rule, local):
            violations.append(f"{node.rule_name} does not imply the local rule {local}")
        step = 1 if node.is_transferring else 0
        for edge in node.inputs:
            if edge.child is None:
                if edge.index != outgoing.index + step:
                    violations.append(f"premise {edge.label} of {node.rule_name} is at index {edge.index}")
                if not isinstance(edge.label, Event) and not (
                    isinstance(edge.label, Knowledge) and is_placeholder(edge.label.term)
                ):
                    violations.append(f"premise {edge.label} of {node.rule_name} is left to the adversary")
                continue
            if edge.index < outgoing.index + step:
                violations.append(f"{edge.child.rule_name} is used by {node.rule_name} before it happens")
            pending.append((edge.child, edge))
    return violations


def validate_tree(tree: DerivationTree) -> DerivationTree:
    """Return the tree unchanged if it is valid.

    Raises:
        MalformedProvenance: listing the violations otherwise
    """
    violations = tree_violations(tree)
    if violations:
        raise MalformedProvenance(str(tree.event), "; ".join(violations))
    return tree
