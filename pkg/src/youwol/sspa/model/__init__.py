"""Protocol model: facts, states, rules, the state preorder, validation and implication."""

# relative
from .classify import FactClass, all_in_n, all_reserved, classify_fact, is_pivot, is_reserved, is_singleton
from .declarations import Declaration, DeclarationKind, Declarations
from .errors import InvalidRule, ModelError
from .facts import (
    AccessPattern,
    Conversion,
    Event,
    Fact,
    Knowledge,
    StateAtom,
    apply_conversion,
    apply_fact,
    apply_state,
    conversion_sort_key,
    fact_as_term,
    fact_bindables,
    fact_depth,
    fact_sort_key,
    state_bindables,
    state_sort_key,
)
from .implies import implies, implies_with_sigma
from .orderings import Partition, closure, join_mo, partition, same_object, sorted_mappings, sorted_pairs
from .rule import Conclusion, Mapping, Ordering, Provenance, ProvenanceKind, Rule, knowledge_premise_variable
from .validate import canonical_key, validate, validate_with_sigma
