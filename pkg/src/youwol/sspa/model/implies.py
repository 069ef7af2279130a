"""Rule implication: R implies R' when one substitution embeds R into R'."""

# standard library
from collections import Counter

# typing
from typing import Iterator, Optional

# application terms
from youwol.sspa.terms import EMPTY, Substitution, Term, match, match_all

# relative
from .facts import Conversion, Fact, StateAtom, apply_fact, apply_state, fact_as_term
from .orderings import closure, join_mo
from .rule import Rule


def _fact_name(fact: Fact) -> str:
    return fact_as_term(fact).symbol


def _quick_reject(general: Rule, specific: Rule) -> bool:
    if general.is_transferring != specific.is_transferring:
        return True
    if len(general.conversions) > len(specific.conversions):
        return True
    specific_names = {_fact_name(fact) for fact in specific.premises}
    if any(_fact_name(fact) not in specific_names for fact in general.premises):
        return True
    specific_states = Counter(state.name for state in specific.states)
    return any(state.name not in specific_states for state in general.states)


def _conversion_pairs(pattern: Conversion, target: Conversion) -> Optional[list[tuple[Term, Term]]]:
    if (pattern.pre is None) != (target.pre is None) or pattern.post.name != target.post.name:
        return None
    pairs = [(pattern.post.as_term(), target.post.as_term())]
    if pattern.pre is not None and target.pre is not None:
        pairs.append((pattern.pre.as_term(), target.pre.as_term()))
    return pairs


def _match_conversions(
    patterns: list[Conversion], targets: list[Conversion], sigma: Substitution, used: frozenset[int]
) -> Iterator[Substitution]:
    if not patterns:
        if len(used) == len(targets):
            yield sigma
        return
    head, *rest = patterns
    for index, target in enumerate(targets):
        pairs = _conversion_pairs(head, target)
        if pairs is None:
            continue
        extended = match_all(pairs, sigma)
        if extended is not None:
            yield from _match_conversions(rest, targets, extended, used | {index})


def _conclusion_matchers(general: Rule, specific: Rule) -> Iterator[Substitution]:
    if general.is_transferring:
        patterns, targets = general.sorted_conversions(), specific.sorted_conversions()
        if len(patterns) == len(targets):
            yield from _match_conversions(patterns, targets, EMPTY, frozenset())
        return
    sigma = match(fact_as_term(general.conclusion_fact), fact_as_term(specific.conclusion_fact))
    if sigma is not None:
        yield sigma


def _match_each(patterns: list[Term], targets: list[Term], sigma: Substitution) -> Iterator[Substitution]:
    if not patterns:
        yield sigma
        return
    head, *rest = patterns
    for target in targets:
        extended = match(head, target, sigma)
        if extended is not None:
            yield from _match_each(rest, targets, extended)


def _ordered(patterns: list[Term], targets: list[Term]) -> list[Term]:
    # fewest candidates first
    def candidates(pattern: Term) -> int:
        return sum(1 for target in targets if match(pattern, target) is not None)

    return sorted(patterns, key=candidates)


def implies_with_sigma(general: Rule, specific: Rule, closure_aware: bool = True) -> Optional[Substitution]:
    """Find a substitution witnessing that general implies specific.

    The rules are expected validated. general is renamed apart from specific first; the returned substitution
    is over the renamed placeholders. Placeholders of specific are taken as constants.

    Args:
        general (Rule): R
        specific (Rule): R'
        closure_aware (bool): compare orderings up to the transitive closure of O'

    Returns:
        Optional[Substitution]: sigma with σV = V', σH ⊆ H', σ(M·O) ⊆ M'·O', σS ⊆ S', σO ⊆ O'; None if there is none
    """
    if _quick_reject(general, specific):
        return None
    general, _ = general.renamed_apart(specific)
    fact_targets = [fact_as_term(fact) for fact in specific.sorted_premises()]
    fact_patterns = _ordered([fact_as_term(fact) for fact in general.sorted_premises()], fact_targets)
    state_targets = [state.as_term() for state in specific.sorted_states()]
    state_patterns = _ordered([state.as_term() for state in general.sorted_states()], state_targets)

    joined_general = join_mo(general.mappings, general.orderings)
    joined_specific = join_mo(specific.mappings, specific.orderings)
    if closure_aware:
        orderings_specific = closure(specific.orderings, specific.states)
    else:
        orderings_specific = set(specific.orderings) | {(state, state) for state in specific.states}

    for sigma in _conclusion_matchers(general, specific):
        for with_facts in _match_each(fact_patterns, fact_targets, sigma):
            for with_states in _match_each(state_patterns, state_targets, with_facts):
                if _annotations_fit(
                    general, with_states, joined_general, joined_specific, orderings_specific
                ):
                    return with_states
    return None


def _annotations_fit(
    general: Rule,
    sigma: Substitution,
    joined_general: set[tuple[Fact, StateAtom]],
    joined_specific: set[tuple[Fact, StateAtom]],
    orderings_specific: set[tuple[StateAtom, StateAtom]],
) -> bool:
    for fact, state in joined_general:
        if (apply_fact(sigma, fact), apply_state(sigma, state)) not in joined_specific:
            return False
    for left, right in general.orderings:
        if (apply_state(sigma, left), apply_state(sigma, right)) not in orderings_specific:
            return False
    return True


def implies(general: Rule, specific: Rule, closure_aware: bool = True) -> bool:
    """Whether general implies specific (see implies_with_sigma)."""
    return implies_with_sigma(general, specific, closure_aware) is not None
