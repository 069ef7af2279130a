"""Knowledge base dumps: one rule per line, with where it comes from."""

# standard library
from pathlib import Path

# typing
from typing import Iterable

# application model
from youwol.sspa.model import Rule
from youwol.sspa.parser import serialize_rule


def dump_line(rule: Rule) -> str:
    return f"#{rule.rule_id} {rule.provenance.describe()} | {serialize_rule(rule)}"


def dump_rules(rules: Iterable[Rule], path: Path) -> None:
    """Write the rules to path, one `#<id> <provenance> | <rule>` line each.

    Args:
        rules (Iterable[Rule]): the rules, in the order to write them
        path (Path): the destination; its parent directory must exist
    """
    with path.open("w", encoding="utf-8") as file:
        for rule in rules:
            file.write(dump_line(rule) + "\n")


def dumped_rule_text(line: str) -> str:
    """The serialized rule of a dump line."""
    return line.split(" | ", 1)[1].strip()
