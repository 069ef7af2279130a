"""Text and structured forms of derivation trees and verdicts."""

# typing
from typing import Any

# application model
from youwol.sspa.model import Conversion, StateAtom

# relative
from .check import Verdict
from .trace import DerivationNode, DerivationTree, Edge, Label


def _label(label: Label) -> str:
    if isinstance(label, tuple):
        return ", ".join(str(conversion) for conversion in label)
    return str(label)


def _states(states: tuple[StateAtom, ...]) -> str:
    return "{" + ", ".join(str(state) for state in states) + "}"


def _edge_line(edge: Edge) -> str:
    return f"[{edge.index}] {_label(edge.label)} @ {_states(edge.states)}"


def _render(node: DerivationNode, edge: Edge, depth: int, lines: list[str]) -> None:
    indent = "  " * depth
    lines.append(f"{indent}{_edge_line(edge)} <= {node.rule_name}")
    for child_edge in node.inputs:
        if child_edge.child is None:
            lines.append(f"{indent}  {_edge_line(child_edge)} <= adversary")
        else:
            _render(child_edge.child, child_edge, depth + 1, lines)


def render_tree(tree: DerivationTree) -> str:
    """Indented text: one line per edge, children below their parent.

    Each line reads `[index] label @ {states} <= rule`.
    """
    lines = [f"initial states: {_states(tree.initial_states)}"]
    _render(tree.root, tree.root_edge, 0, lines)
    return "\n".join(lines)


def render_steps(tree: DerivationTree) -> str:
    lines = []
    for number, step in enumerate(tree.steps, start=1):
        if step.instance.is_transferring:
            produced = ", ".join(str(c) for c in step.instance.sorted_conversions())
        else:
            produced = str(step.instance.conclusion)
        lines.append(f"{number:>3}. (period {step.period}) {step.rule_name}: {produced}")
    return "\n".join(lines)


def _conversion_dict(conversion: Conversion) -> dict[str, Any]:
    return {"pre": str(conversion.pre) if conversion.pre is not None else None, "post": str(conversion.post)}


def _edge_dict(edge: Edge) -> dict[str, Any]:
    label: Any = (
        {"conversions": [_conversion_dict(c) for c in edge.label]}
        if isinstance(edge.label, tuple)
        else {"fact": str(edge.label)}
    )
    result: dict[str, Any] = {**label, "index": edge.index, "states": [str(state) for state in edge.states]}
    if edge.child is not None:
        result["node"] = _node_dict(edge.child)
    return result


def _node_dict(node: DerivationNode) -> dict[str, Any]:
    return {"rule": node.rule_name, "inputs": [_edge_dict(edge) for edge in node.inputs]}


def tree_as_dict(tree: DerivationTree) -> dict[str, Any]:
    return {
        "event": str(tree.event),
        "transitions": tree.transitions,
        "initial_states": [str(state) for state in tree.initial_states],
        "root": _edge_dict(tree.root_edge),
        "steps": [
            {"rule": step.rule_name, "period": step.period, "instance": str(step.instance)} for step in tree.steps
        ],
    }


def verdict_as_dict(verdict: Verdict) -> dict[str, Any]:
    """Structured verdict, free of timings so that equal runs give equal dictionaries."""
    result: dict[str, Any] = {"event": verdict.event, "status": verdict.status.value}
    if verdict.witness is not None:
        result["witness_rule"] = str(verdict.witness.rule)
        result["witness_rule_id"] = verdict.witness.rule.rule_id
        result["alternatives"] = verdict.alternatives
        result["access"] = list(verdict.witness.access)
    if verdict.tree is not None:
        result["tree"] = tree_as_dict(verdict.tree)
    return result
