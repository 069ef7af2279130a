"""Parsed protocol models."""

# standard library
from dataclasses import dataclass, field

# typing
from typing import Optional

# application model
from youwol.sspa.model import AccessPattern, Declarations, Rule


@dataclass(frozen=True)
class Query:
    """A state consistent rule concluding the event whose reachability is checked."""

    name: str
    rule: Rule

    @property
    def event(self) -> str:
        return self.name


@dataclass
class Model:
    declarations: Declarations
    rules: list[Rule] = field(default_factory=list)
    access: list[AccessPattern] = field(default_factory=list)
    queries: list[Query] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def initial_rules(self) -> list[Rule]:
        """Protocol rules followed by query rules."""
        return [*self.rules, *(query.rule for query in self.queries)]

    def query(self, name: str) -> Optional[Query]:
        return next((query for query in self.queries if query.name == name), None)

    def query_names(self) -> list[str]:
        return [query.name for query in self.queries]
