"""Rules `H : M ⊑ S : O ⊳ V` and the record of how each rule was derived."""

# standard library
from dataclasses import dataclass, field, replace
from enum import Enum

# typing
from typing import Iterable, Optional, Union

# application terms
from youwol.sspa.terms import (
    EMPTY,
    Bindable,
    Nonce,
    Placeholder,
    Substitution,
    Term,
    all_bindables,
    depth,
    is_placeholder,
    rename_apart,
)

# relative
from .facts import (
    Conversion,
    Event,
    Fact,
    Knowledge,
    StateAtom,
    apply_conversion,
    apply_fact,
    apply_state,
    conversion_sort_key,
    fact_sort_key,
    state_sort_key,
)

Mapping = tuple[Fact, StateAtom]
Ordering = tuple[StateAtom, StateAtom]
Conclusion = Union[Fact, frozenset[Conversion]]


class ProvenanceKind(Enum):
    BASE = "base"
    COMPOSED = "composed"
    TRANSFORMED = "transformed"


@dataclass(frozen=True)
class Provenance:
    """How a rule was obtained.

    For derived rules, parent_rules are the parents as they were used: renamed apart, before sigma was applied.
    sigma maps their bindables to the derived rule's bindables (validation included).
    parent_sigmas map the bindables of each parent as archived, before renaming, to the derived rule's bindables.
    """

    kind: ProvenanceKind
    rule_name: str = ""
    parents: tuple[int, ...] = ()
    parent_rules: tuple["Rule", ...] = ()
    pivot: Optional[Fact] = None
    cover: tuple[tuple[Conversion, tuple[StateAtom, ...]], ...] = ()
    sigma: Substitution = EMPTY
    parent_sigmas: tuple[Substitution, ...] = ()

    def describe(self) -> str:
        if self.kind == ProvenanceKind.BASE:
            return f"base:{self.rule_name}"
        parents = ",".join(f"#{parent}" for parent in self.parents)
        if self.kind == ProvenanceKind.COMPOSED:
            return f"compose({parents} on {self.pivot})"
        return f"transform({parents})"


BASE_PROVENANCE = Provenance(ProvenanceKind.BASE)


@dataclass(frozen=True, kw_only=True)
class Rule:
    """A state consistent rule (the conclusion is a fact) or a state transferring rule (a set of conversions).

    Equality is structural: the name, id and provenance are not compared.
    """

    premises: frozenset[Fact] = frozenset()
    mappings: frozenset[Mapping] = frozenset()
    states: frozenset[StateAtom] = frozenset()
    orderings: frozenset[Ordering] = frozenset()
    conclusion: Conclusion
    name: str = field(default="", compare=False)
    rule_id: Optional[int] = field(default=None, compare=False)
    provenance: Provenance = field(default=BASE_PROVENANCE, compare=False, repr=False)

    @staticmethod
    def with_defaults(
        premises: Iterable[Fact],
        states: Iterable[StateAtom],
        conclusion: Conclusion,
        name: str = "",
    ) -> "Rule":
        """Build a rule with the default annotations: every premise at every state, all states at the same time.

        Args:
            premises (Iterable[Fact]): H
            states (Iterable[StateAtom]): S
            conclusion (Conclusion): V
            name (str): the rule name

        Returns:
            Rule: H : H×S ⊑ S : S×S ⊳ V
        """
        premises = frozenset(premises)
        states = frozenset(states)
        return Rule(
            premises=premises,
            mappings=frozenset((fact, state) for fact in premises for state in states),
            states=states,
            orderings=frozenset((left, right) for left in states for right in states),
            conclusion=conclusion,
            name=name,
            provenance=Provenance(ProvenanceKind.BASE, rule_name=name),
        )

    @property
    def is_transferring(self) -> bool:
        return isinstance(self.conclusion, frozenset)

    @property
    def is_consistent(self) -> bool:
        return not self.is_transferring

    @property
    def conversions(self) -> frozenset[Conversion]:
        return self.conclusion if isinstance(self.conclusion, frozenset) else frozenset()

    @property
    def conclusion_fact(self) -> Fact:
        if isinstance(self.conclusion, frozenset):
            raise TypeError(f"Rule {self} is state transferring")
        return self.conclusion

    @property
    def concludes_event(self) -> bool:
        return isinstance(self.conclusion, Event)

    def pre_states(self) -> list[StateAtom]:
        return [conversion.pre for conversion in self.sorted_conversions() if conversion.pre is not None]

    def post_states(self) -> list[StateAtom]:
        return [conversion.post for conversion in self.sorted_conversions()]

    def sorted_premises(self) -> list[Fact]:
        return sorted(self.premises, key=fact_sort_key)

    def sorted_states(self) -> list[StateAtom]:
        return sorted(self.states, key=state_sort_key)

    def sorted_conversions(self) -> list[Conversion]:
        return sorted(self.conversions, key=conversion_sort_key)

    def terms(self) -> list[Term]:
        """All the terms the rule is made of, in a deterministic order."""
        result: list[Term] = []
        for fact in self.sorted_premises():
            result.extend(fact.args)
        for state in self.sorted_states():
            result.extend(state.args)
        for conversion in self.sorted_conversions():
            if conversion.pre is not None:
                result.extend(conversion.pre.args)
            result.extend(conversion.post.args)
        if not isinstance(self.conclusion, frozenset):
            result.extend(self.conclusion.args)
        return result

    def bindables(self) -> set[Bindable]:
        return all_bindables(self.terms())

    def placeholder_names(self) -> set[str]:
        return {bindable.name for bindable in self.bindables() if not isinstance(bindable, Nonce)}

    def nonces(self) -> set[Nonce]:
        return {bindable for bindable in self.bindables() if isinstance(bindable, Nonce)}

    def depth(self) -> int:
        return max((depth(term) for term in self.terms()), default=0)

    def apply(self, sigma: Substitution) -> "Rule":
        """Apply a substitution everywhere; annotations follow their facts and states."""
        if not sigma:
            return self
        conclusion: Conclusion
        if isinstance(self.conclusion, frozenset):
            conclusion = frozenset(apply_conversion(sigma, conversion) for conversion in self.conclusion)
        else:
            conclusion = apply_fact(sigma, self.conclusion)
        return replace(
            self,
            premises=frozenset(apply_fact(sigma, fact) for fact in self.premises),
            mappings=frozenset((apply_fact(sigma, fact), apply_state(sigma, state)) for fact, state in self.mappings),
            states=frozenset(apply_state(sigma, state) for state in self.states),
            orderings=frozenset(
                (apply_state(sigma, left), apply_state(sigma, right)) for left, right in self.orderings
            ),
            conclusion=conclusion,
        )

    def renamed_apart(self, other: "Rule") -> tuple["Rule", Substitution]:
        """Rename the placeholders and nonces of this rule away from those of another rule.

        Args:
            other (Rule): the rule to keep apart from

        Returns:
            tuple[Rule, Substitution]: the renamed rule and the renaming
        """
        _, renaming = rename_apart(self.terms(), other.placeholder_names(), other.nonces())
        return self.apply(renaming), renaming

    def __str__(self) -> str:
        # relative
        from ..parser.serialize import serialize_rule

        return serialize_rule(self)


def knowledge_premise_variable(fact: Fact) -> Optional[Placeholder]:
    """The placeholder v of a premise k(v), if the premise has that form."""
    if isinstance(fact, Knowledge) and is_placeholder(fact.term):
        return fact.term  # type: ignore[return-value]
    return None
