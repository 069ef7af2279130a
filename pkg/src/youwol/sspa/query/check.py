"""Reachability verdicts over the final rules of a saturation."""

# standard library
from dataclasses import dataclass, field
from enum import Enum

# typing
from typing import TYPE_CHECKING, Iterable, Optional

# application terms
from youwol.sspa.terms import EMPTY, NoUnifier, Substitution, unify_all

# application model
from youwol.sspa.model import AccessPattern, Event, InvalidRule, Rule, all_in_n, partition, validate

# relative
from .access import access_unifier

if TYPE_CHECKING:
    from .trace import DerivationTree


class VerdictStatus(Enum):
    SECURE = "Secure"
    ATTACK = "Attack"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Witness:
    """A final rule concluding the event, and the substitution making its states initial and accessible."""

    rule: Rule
    sigma: Substitution
    access: tuple[str, ...] = ()


@dataclass
class Verdict:
    status: VerdictStatus
    event: str
    witness: Optional[Witness] = None
    alternatives: int = 0
    stats: dict = field(default_factory=dict)
    tree: Optional["DerivationTree"] = None

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.status == VerdictStatus.ATTACK):
            raise ValueError("A witness is given exactly for attacks")


def _concludes(rule: Rule, event: str) -> bool:
    return isinstance(rule.conclusion, Event) and rule.conclusion.name == event


def _collapse_partitions(rule: Rule) -> Optional[Substitution]:
    pairs = [
        (part[0].as_term(), other.as_term()) for part in partition(rule.states) for other in part[1:]
    ]
    try:
        return unify_all(pairs)
    except NoUnifier:
        return None


def _access(
    representatives: list, patterns: list[AccessPattern], sigma: Substitution, avoid: set[str]
) -> Optional[tuple[Substitution, tuple[str, ...]]]:
    if not representatives:
        return sigma, ()
    head, *rest = representatives
    for pattern in patterns:
        extended = access_unifier(head, pattern, sigma, avoid)
        if extended is None:
            continue
        found = _access(rest, patterns, extended, avoid)
        if found is not None:
            return found[0], (f"{head} ~ {pattern.pattern}", *found[1])
    return None


def witness_of(rule: Rule, patterns: Iterable[AccessPattern]) -> Optional[Witness]:
    """Check one final rule: its object states collapse to one state each, all accessible.

    Args:
        rule (Rule): a rule of B
        patterns (Iterable[AccessPattern]): the access patterns

    Returns:
        Optional[Witness]: the witness, None when the rule does not describe an attack
    """
    sigma = _collapse_partitions(rule)
    if sigma is None:
        return None
    collapsed = rule.apply(sigma)
    representatives = [part[0] for part in partition(collapsed.states)]
    found = _access(representatives, list(patterns), EMPTY, collapsed.placeholder_names())
    if found is None:
        return None
    access_sigma, audit = found
    total = access_sigma.compose(sigma)
    try:
        instance = validate(rule.apply(total))
    except InvalidRule:
        return None
    if not all_in_n(instance):
        return None
    return Witness(rule=rule, sigma=Substitution(dict(total)), access=audit)


def check_query(
    rules: Iterable[Rule],
    event: str,
    patterns: Iterable[AccessPattern],
    truncated: bool = False,
    stats: Optional[dict] = None,
) -> Verdict:
    """Decide whether the event is reachable.

    Args:
        rules (Iterable[Rule]): B, the final rules of a saturation
        event (str): the event name
        patterns (Iterable[AccessPattern]): the access patterns
        truncated (bool): whether the saturation stopped before its fixpoint
        stats (Optional[dict]): statistics attached to the verdict

    Returns:
        Verdict: Attack with the first witness by rule id, Secure, or Unknown when truncated without a witness
    """
    patterns = list(patterns)
    candidates = sorted(
        (rule for rule in rules if _concludes(rule, event)),
        key=lambda rule: rule.rule_id if rule.rule_id is not None else -1,
    )
    witnesses = [witness for witness in (witness_of(rule, patterns) for rule in candidates) if witness is not None]
    stats = dict(stats or {})
    if witnesses:
        return Verdict(
            VerdictStatus.ATTACK, event, witness=witnesses[0], alternatives=len(witnesses) - 1, stats=stats
        )
    return Verdict(VerdictStatus.UNKNOWN if truncated else VerdictStatus.SECURE, event, stats=stats)
