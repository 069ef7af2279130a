"""Accessibility of object states to the adversary."""

# typing
from typing import Iterable, Optional

# application terms
from youwol.sspa.terms import NoUnifier, Substitution, placeholders, rename_apart, unify

# application model
from youwol.sspa.model import AccessPattern, StateAtom

# relative
from .errors import NotAccessible


def access_unifier(
    state: StateAtom, pattern: AccessPattern, sigma: Optional[Substitution] = None, avoid: Iterable[str] = ()
) -> Optional[Substitution]:
    """Unify a state with an access pattern renamed apart from it, extending sigma.

    Args:
        state (StateAtom): the state
        pattern (AccessPattern): the pattern
        sigma (Optional[Substitution]): bindings already committed to
        avoid (Iterable[str]): placeholder names the renamed pattern must not use

    Returns:
        Optional[Substitution]: the unifier, None when there is none
    """
    if state.name != pattern.pattern.name:
        return None
    used = set(avoid) | {bindable.name for arg in state.args for bindable in placeholders(arg)}
    if sigma is not None:
        used |= {key.name for key in sigma}
        used |= {bindable.name for value in sigma.values() for bindable in placeholders(value)}
    (renamed,), _ = rename_apart((pattern.pattern.as_term(),), used)
    try:
        return unify(state.as_term(), renamed, sigma)
    except NoUnifier:
        return None


def accessible(state: StateAtom, patterns: Iterable[AccessPattern]) -> Substitution:
    """Find the first access pattern the state unifies with.

    Placeholders on both sides are variables: pattern configurations absorb any structure of the state.

    Args:
        state (StateAtom): the state
        patterns (Iterable[AccessPattern]): the access patterns of the model

    Returns:
        Substitution: the unifier

    Raises:
        NotAccessible: if no pattern unifies with the state
    """
    for pattern in patterns:
        sigma = access_unifier(state, pattern)
        if sigma is not None:
            return sigma
    raise NotAccessible(str(state))
