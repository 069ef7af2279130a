"""Rule composition: supply a premise of a rule with the conclusion of a state consistent rule."""

# application terms
from youwol.sspa.terms import unify

# application model
from youwol.sspa.model import (
    Fact,
    Provenance,
    ProvenanceKind,
    Rule,
    all_reserved,
    fact_as_term,
    is_pivot,
    validate_with_sigma,
)

# relative
from .errors import SideConditionViolated


def compose_rules(rule: Rule, target: Rule, pivot: Fact, check_side_conditions: bool = True) -> Rule:
    """Compose rule into target on the premise pivot, then validate.

    rule is renamed apart from target first. The states of rule are ordered before the states pivot is mapped to.

    Args:
        rule (Rule): a state consistent rule R concluding f
        target (Rule): the rule R' with the premise pivot
        pivot (Fact): f0, a premise of target unifying with f
        check_side_conditions (bool): require R's premises reserved and f0 a pivot

    Returns:
        Rule: (R ∘ R') validated, with its provenance

    Raises:
        NotUnifiable: if f and f0 do not unify
        SideConditionViolated: if a side condition does not hold
        InvalidRule: if validation fails
    """
    if rule.is_transferring:
        raise SideConditionViolated("compose", "the composed rule must be state consistent")
    if pivot not in target.premises:
        raise SideConditionViolated("compose", f"{pivot} is not a premise of the target rule")
    if check_side_conditions:
        if not all_reserved(rule):
            raise SideConditionViolated("compose", "the composed rule has premises outside N")
        if not is_pivot(pivot, target):
            raise SideConditionViolated("compose", f"{pivot} is reserved")

    renamed, renaming = rule.renamed_apart(target)
    sigma = unify(fact_as_term(renamed.conclusion_fact), fact_as_term(pivot))
    pivot_states = {state for fact, state in target.mappings if fact == pivot}
    composed = Rule(
        premises=renamed.premises | (target.premises - {pivot}),
        mappings=renamed.mappings | target.mappings,
        states=renamed.states | target.states,
        orderings=renamed.orderings
        | target.orderings
        | frozenset((state, later) for state in renamed.states for later in pivot_states),
        conclusion=target.conclusion,
    ).apply(sigma)
    validated, sigma_validation = validate_with_sigma(composed)
    total = sigma_validation.compose(sigma)
    provenance = Provenance(
        ProvenanceKind.COMPOSED,
        parents=(
            rule.rule_id if rule.rule_id is not None else -1,
            target.rule_id if target.rule_id is not None else -1,
        ),
        parent_rules=(renamed, target),
        pivot=pivot,
        sigma=total,
        parent_sigmas=(total.compose(renaming), total),
    )
    return Rule(
        premises=validated.premises,
        mappings=validated.mappings,
        states=validated.states,
        orderings=validated.orderings,
        conclusion=validated.conclusion,
        provenance=provenance,
    )
