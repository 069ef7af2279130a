"""State transformation: replace the latest states of a rule by the states they were converted from."""

# standard library
import itertools

from dataclasses import dataclass

# typing
from typing import Iterator, Optional

# application terms
from youwol.sspa.terms import EMPTY, NoUnifier, Nonce, Substitution, Term, nonces, unify_all

# application model
from youwol.sspa.model import (
    Conversion,
    Provenance,
    ProvenanceKind,
    Rule,
    StateAtom,
    all_reserved,
    apply_conversion,
    apply_state,
    closure,
    partition,
    state_sort_key,
    validate_with_sigma,
)

# relative
from .errors import LimitExceeded, SideConditionViolated


@dataclass(frozen=True)
class CoverMap:
    """A choice of latest states for the conversions of a transferring rule.

    transferring is the transferring rule renamed apart from the consistent one, by renaming; sigma unifies every
    post-state with the states it is mapped to. An empty image means the conversion leaves the states of the consistent
    rule untouched.
    """

    transferring: Rule
    sigma: Substitution
    m: tuple[tuple[Conversion, frozenset[StateAtom]], ...]
    renaming: Substitution = EMPTY

    def image(self, conversion: Conversion) -> frozenset[StateAtom]:
        return next((states for converted, states in self.m if converted == conversion), frozenset())

    def __str__(self) -> str:
        parts = ", ".join(
            f"{conversion} -> {{{', '.join(str(s) for s in sorted(states, key=state_sort_key))}}}"
            for conversion, states in self.m
        )
        return f"{{{parts}}} with {self.sigma}"


def _upward_closed_subsets(
    part: tuple[StateAtom, ...], closed: set[tuple[StateAtom, StateAtom]]
) -> Iterator[frozenset[StateAtom]]:
    for size in range(1, len(part) + 1):
        for subset in itertools.combinations(part, size):
            chosen = frozenset(subset)
            if all(other in chosen for state in chosen for other in part if (state, other) in closed):
                yield chosen


def _candidates(
    conversion: Conversion, consistent: Rule, closed: set[tuple[StateAtom, StateAtom]], max_partition: int
) -> list[frozenset[StateAtom]]:
    post = conversion.post
    result: list[frozenset[StateAtom]] = [frozenset()]
    for part in partition(consistent.states):
        if part[0].name != post.name:
            continue
        if len(part) > max_partition:
            raise LimitExceeded("partition", max_partition)
        unifiable = [state for state in part if _unifier([(post.as_term(), state.as_term())]) is not None]
        if not unifiable:
            continue
        for subset in _upward_closed_subsets(part, closed):
            if subset <= set(unifiable):
                result.append(subset)
    return result


def _unifier(pairs: list[tuple[Term, Term]]) -> Optional[Substitution]:
    try:
        return unify_all(pairs)
    except NoUnifier:
        return None


def _is_cover_set(cover: CoverMap, consistent: Rule) -> bool:
    sigma = cover.sigma
    transferring = cover.transferring
    states = {apply_state(sigma, state) for state in transferring.states | consistent.states}
    orderings = {
        (apply_state(sigma, lower), apply_state(sigma, upper))
        for lower, upper in transferring.orderings | consistent.orderings
    }
    closed = closure(orderings, states)
    chosen = {apply_state(sigma, state) for _, image in cover.m for state in image}
    keys = {apply_state(sigma, conversion.post).key for conversion, _ in cover.m}
    region = {state for state in states if state.key in keys}
    return all(upper in chosen for lower in chosen for upper in region if (lower, upper) in closed)


def enumerate_cover_maps(transferring: Rule, consistent: Rule, max_partition: int = 8) -> list[CoverMap]:
    """All the ways to pick, for each conversion, the latest states it produced.

    Args:
        transferring (Rule): a state transferring rule R
        consistent (Rule): a state consistent rule R'
        max_partition (int): largest partition of R' states to enumerate subsets of

    Returns:
        list[CoverMap]: the valid cover maps, in a deterministic order; at least one image is not empty

    Raises:
        LimitExceeded: if a partition of R' states is larger than max_partition
    """
    if not transferring.is_transferring or consistent.is_transferring:
        return []
    renamed, renaming = transferring.renamed_apart(consistent)
    conversions = renamed.sorted_conversions()
    closed = closure(consistent.orderings, consistent.states)
    candidates = [_candidates(conversion, consistent, closed, max_partition) for conversion in conversions]
    result: list[CoverMap] = []
    for images in itertools.product(*candidates):
        non_empty = [image for image in images if image]
        if not non_empty:
            continue
        if sum(len(image) for image in non_empty) != len(frozenset().union(*non_empty)):
            continue
        pairs = [
            (conversion.post.as_term(), state.as_term())
            for conversion, image in zip(conversions, images)
            for state in sorted(image, key=state_sort_key)
        ]
        sigma = _unifier(pairs)
        if sigma is None:
            continue
        cover = CoverMap(renamed, sigma, tuple(zip(conversions, images)), renaming)
        if _is_cover_set(cover, consistent):
            result.append(cover)
    return result


def _generated_nonces(transferring: Rule, sigma: Substitution) -> set[Nonce]:
    generated: set[Nonce] = set()
    for nonce in transferring.nonces():
        generated |= nonces(sigma.apply(nonce))
    return generated


def transform_state(
    transferring: Rule,
    consistent: Rule,
    cover: CoverMap,
    check_side_conditions: bool = True,
    require_event: bool = True,
) -> Rule:
    """Apply a transferring rule backwards to a consistent rule, on a cover map, then validate.

    Args:
        transferring (Rule): R, the rule the cover map was enumerated for
        consistent (Rule): R'
        cover (CoverMap): one of enumerate_cover_maps(R, R')
        check_side_conditions (bool): require all premises reserved
        require_event (bool): require R' to conclude an event

    Returns:
        Rule: (R ⋈m R') validated, with its provenance

    Raises:
        SideConditionViolated: if a side condition does not hold, or the transformation is impossible: a created
            object already has earlier states, or a nonce generated by R occurs in a state used no later than R
        InvalidRule: if validation fails
    """
    if check_side_conditions:
        if not all_reserved(transferring) or not all_reserved(consistent):
            raise SideConditionViolated("transform", "premises outside N")
    if require_event and not consistent.concludes_event:
        raise SideConditionViolated("transform", "the consistent rule must conclude an event")

    sigma = cover.sigma
    renamed = cover.transferring
    conversions = [apply_conversion(sigma, conversion) for conversion in renamed.sorted_conversions()]
    pre_states = frozenset(conversion.pre for conversion in conversions if conversion.pre is not None)
    post_states = frozenset(conversion.post for conversion in conversions)
    own_states = frozenset(apply_state(sigma, state) for state in renamed.states)
    consistent_states = frozenset(apply_state(sigma, state) for state in consistent.states)
    everything = own_states | consistent_states

    orderings = set(renamed.apply(sigma).orderings) | set(consistent.apply(sigma).orderings)
    orderings |= {(lower, upper) for lower in pre_states for upper in pre_states}
    for conversion, converted in zip(renamed.sorted_conversions(), conversions):
        image = frozenset(apply_state(sigma, state) for state in cover.image(conversion))
        if converted.pre is None:
            if any(state.key == converted.post.key and state not in image for state in everything):
                raise SideConditionViolated("transform", f"{converted.post} is created after its own states")
            continue
        outdated = {state for state in everything if state.key == converted.pre.key} - image
        orderings |= {(state, pre) for state in outdated for pre in pre_states}
        orderings |= {(pre, state) for pre in pre_states for state in image}

    states = own_states | (consistent_states - post_states) | pre_states
    transformed = Rule(
        premises=renamed.apply(sigma).premises | consistent.apply(sigma).premises,
        mappings=renamed.apply(sigma).mappings | consistent.apply(sigma).mappings,
        states=states,
        orderings=frozenset(orderings),
        conclusion=consistent.apply(sigma).conclusion,
    )

    generated = _generated_nonces(renamed, sigma)
    if generated:
        closed = closure(transformed.orderings, transformed.states)
        for state, pre in closed:
            if pre in pre_states and state in transformed.states and any(
                nonces(arg) & generated for arg in state.args
            ):
                raise SideConditionViolated("transform", f"{state} holds a nonce generated after it")

    validated, sigma_validation = validate_with_sigma(transformed)
    total = sigma_validation.compose(sigma)
    provenance = Provenance(
        ProvenanceKind.TRANSFORMED,
        parents=(
            transferring.rule_id if transferring.rule_id is not None else -1,
            consistent.rule_id if consistent.rule_id is not None else -1,
        ),
        parent_rules=(renamed, consistent),
        cover=tuple((conversion, tuple(sorted(image, key=state_sort_key))) for conversion, image in cover.m),
        sigma=total,
        parent_sigmas=(total.compose(cover.renaming), total),
    )
    return Rule(
        premises=validated.premises,
        mappings=validated.mappings,
        states=validated.states,
        orderings=validated.orderings,
        conclusion=validated.conclusion,
        provenance=provenance,
    )
