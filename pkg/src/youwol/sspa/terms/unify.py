"""Syntactic most general unification, one-way matching and renaming apart."""

# standard library
import itertools
import string

# typing
from typing import Iterable, Optional, Sequence

# relative
from .substitution import EMPTY, Substitution
from .term import Bindable, Config, Function, Nonce, Term, Var, all_bindables, is_placeholder, term_key


class NoUnifier(RuntimeError):
    """Simple RuntimeError for terms that do not unify."""

    def __init__(self, left: Term, right: Term, reason: str = "clash"):
        """Call super with a formatted message.

        Args:
            left (Term): left term of the failing pair.
            right (Term): right term of the failing pair.
            reason (str): 'clash', 'arity' or 'occurs'.
        """
        super().__init__(f"No unifier for {left} and {right} ({reason})")
        self.reason = reason


def _walk(term: Term, bindings: dict[Bindable, Term]) -> Term:
    while not isinstance(term, Function) and term in bindings:
        term = bindings[term]  # type: ignore[index]
    return term


def _occurs(needle: Bindable, term: Term, bindings: dict[Bindable, Term]) -> bool:
    term = _walk(term, bindings)
    if term == needle:
        return True
    if isinstance(term, Function):
        return any(_occurs(needle, arg, bindings) for arg in term.args)
    return False


def _unify_into(pairs: list[tuple[Term, Term]], bindings: dict[Bindable, Term]) -> None:
    while pairs:
        left, right = pairs.pop()
        left, right = _walk(left, bindings), _walk(right, bindings)
        if left == right:
            continue
        if is_placeholder(left) or is_placeholder(right):
            variable, value = (left, right) if is_placeholder(left) else (right, left)
            if _occurs(variable, value, bindings):  # type: ignore[arg-type]
                raise NoUnifier(left, right, "occurs")
            bindings[variable] = value  # type: ignore[index]
        elif isinstance(left, Nonce) and isinstance(right, Nonce):
            if left.name != right.name:
                raise NoUnifier(left, right)
            later, earlier = (left, right) if term_key(left) > term_key(right) else (right, left)
            bindings[later] = earlier
        elif isinstance(left, Function) and isinstance(right, Function):
            if left.symbol != right.symbol:
                raise NoUnifier(left, right)
            if len(left.args) != len(right.args):
                raise NoUnifier(left, right, "arity")
            pairs.extend(zip(left.args, right.args))
        else:
            raise NoUnifier(left, right)


def unify_all(pairs: Iterable[tuple[Term, Term]], sigma: Optional[Substitution] = None) -> Substitution:
    """Most general unifier of several term pairs, extending an idempotent substitution.

    Args:
        pairs (Iterable[tuple[Term, Term]]): the equations.
        sigma (Optional[Substitution]): bindings already committed to.

    Returns:
        Substitution: an idempotent most general unifier.

    Raises:
        NoUnifier: on a symbol clash, an arity mismatch or an occurs-check failure.
    """
    bindings: dict[Bindable, Term] = dict(sigma) if sigma is not None else {}
    _unify_into(list(pairs)[::-1], bindings)
    return Substitution(bindings)


def unify(left: Term, right: Term, sigma: Optional[Substitution] = None) -> Substitution:
    return unify_all([(left, right)], sigma)


def unifiable(left: Term, right: Term) -> bool:
    try:
        unify(left, right)
    except NoUnifier:
        return False
    return True


def match_all(pairs: Iterable[tuple[Term, Term]], sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    """One-way matching: find sigma with sigma(pattern) == target for every (pattern, target) pair.

    Only the bindables of the patterns are bound; targets are taken as they are.

    Args:
        pairs (Iterable[tuple[Term, Term]]): (pattern, target) pairs.
        sigma (Optional[Substitution]): bindings already committed to.

    Returns:
        Optional[Substitution]: the matcher, None if there is none.
    """
    bindings: dict[Bindable, Term] = dict(sigma) if sigma is not None else {}
    stack = list(pairs)
    while stack:
        pattern, target = stack.pop()
        if isinstance(pattern, Function):
            if (
                not isinstance(target, Function)
                or pattern.symbol != target.symbol
                or len(pattern.args) != len(target.args)
            ):
                return None
            stack.extend(zip(pattern.args, target.args))
            continue
        if isinstance(pattern, (Var, Config)) or (
            isinstance(pattern, Nonce) and isinstance(target, Nonce) and pattern.name == target.name
        ):
            bound = bindings.get(pattern)
            if bound is None:
                bindings[pattern] = target
            elif bound != target:
                return None
            continue
        if pattern != target:
            return None
    return Substitution(bindings, normalize=False)


def match(pattern: Term, target: Term, sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    return match_all([(pattern, target)], sigma)


def fresh_name(base: str, avoid: set[str]) -> str:
    stem = base.rstrip(string.digits) or base
    for index in itertools.count(1):
        candidate = f"{stem}{index}"
        if candidate not in avoid:
            return candidate
    raise AssertionError("unreachable")


def rename_apart(
    terms: Sequence[Term], used: Iterable[str], used_nonces: Iterable[Nonce] = ()
) -> tuple[tuple[Term, ...], Substitution]:
    """Rename placeholders (and nonces) so that they are fresh with respect to used symbols.

    Shared placeholders are renamed consistently. Placeholders not clashing with used are kept.

    Args:
        terms (Sequence[Term]): the terms to rename together.
        used (Iterable[str]): placeholder names to avoid.
        used_nonces (Iterable[Nonce]): nonce instances to avoid.

    Returns:
        tuple[tuple[Term, ...], Substitution]: the renamed terms and the renaming.
    """
    used_names = set(used)
    taken_nonces = set(used_nonces)
    own = sorted(all_bindables(terms), key=term_key)
    avoid = used_names | {bindable.name for bindable in own if not isinstance(bindable, Nonce)}
    instances = {
        (nonce.name, nonce.instance) for nonce in itertools.chain(taken_nonces, own) if isinstance(nonce, Nonce)
    }
    renaming: dict[Bindable, Term] = {}
    for bindable in own:
        if isinstance(bindable, Nonce):
            if bindable in taken_nonces:
                instance = 1 + max(i for name, i in instances if name == bindable.name)
                instances.add((bindable.name, instance))
                renaming[bindable] = Nonce(bindable.name, instance)
        elif bindable.name in used_names:
            new_name = fresh_name(bindable.name, avoid)
            avoid.add(new_name)
            renaming[bindable] = type(bindable)(new_name)
    sigma = Substitution(renaming, normalize=False)
    return sigma.apply_all(terms), sigma


__all__ = ["EMPTY", "NoUnifier", "match", "match_all", "rename_apart", "unifiable", "unify", "unify_all"]
