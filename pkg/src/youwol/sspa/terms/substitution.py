"""Substitutions: finite maps from placeholders (and nonces) to terms."""

# typing
from typing import Iterable, Iterator, Mapping, Optional

# relative
from .term import Bindable, Function, Term, occurs, term_key


class CyclicBindings(RuntimeError):
    """Simple RuntimeError for bindings that cannot be resolved through each other."""

    def __init__(self, bindable: Bindable, term: Term):
        """Call super with a formatted message.

        Args:
            bindable (Bindable): the bound placeholder.
            term (Term): the term it (indirectly) occurs in.
        """
        super().__init__(f"Binding {bindable} occurs in its own value {term}")


class Substitution(Mapping[Bindable, Term]):
    """Immutable substitution.

    Bindings are resolved through each other at construction, so that applying a substitution is a single pass and
    applying it twice is the same as applying it once. Identity bindings are dropped.
    """

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Optional[Mapping[Bindable, Term]] = None, normalize: bool = True):
        raw = dict(bindings) if bindings is not None else {}
        resolved = _resolve_all(raw) if normalize else raw
        self._bindings: dict[Bindable, Term] = {key: value for key, value in resolved.items() if key != value}
        self._hash: Optional[int] = None

    def __getitem__(self, key: Bindable) -> Term:
        return self._bindings[key]

    def __iter__(self) -> Iterator[Bindable]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Substitution):
            return self._bindings == other._bindings
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Substitution({self})"

    def __str__(self) -> str:
        items = sorted(self._bindings.items(), key=lambda item: term_key(item[0]))
        return "{" + ", ".join(f"{key} -> {value}" for key, value in items) + "}"

    def apply(self, term: Term) -> Term:
        """Replace every bound placeholder of the term, in a single simultaneous pass.

        Args:
            term (Term): the term.

        Returns:
            Term: the instantiated term.
        """
        if not self._bindings:
            return term
        return _apply(self._bindings, term)

    def apply_all(self, terms: Iterable[Term]) -> tuple[Term, ...]:
        return tuple(self.apply(term) for term in terms)

    def compose(self, inner: "Substitution") -> "Substitution":
        """Compose with an inner substitution: result.apply(t) == self.apply(inner.apply(t)).

        The result is idempotent when no placeholder bound by self occurs in the range of inner, as for a unifier
        computed on terms inner was already applied to. Otherwise no idempotent substitution satisfies the equation.

        Args:
            inner (Substitution): the substitution applied first.

        Returns:
            Substitution: the composition.
        """
        bindings = {key: self.apply(value) for key, value in inner.items()}
        for key, value in self.items():
            if key not in bindings:
                bindings[key] = value
        return Substitution(bindings, normalize=False)

    def restrict(self, keys: Iterable[Bindable]) -> "Substitution":
        kept = set(keys)
        return Substitution({key: value for key, value in self.items() if key in kept}, normalize=False)

    def sorted_items(self) -> list[tuple[Bindable, Term]]:
        return sorted(self.items(), key=lambda item: term_key(item[0]))


def apply(sigma: Substitution, term: Term) -> Term:
    return sigma.apply(term)


def compose(outer: Substitution, inner: Substitution) -> Substitution:
    return outer.compose(inner)


def _apply(bindings: Mapping[Bindable, Term], term: Term) -> Term:
    if isinstance(term, Function):
        if not term.args:
            return term
        return Function(term.symbol, tuple(_apply(bindings, arg) for arg in term.args))
    return bindings.get(term, term)  # type: ignore[arg-type]


def _resolve_all(bindings: dict[Bindable, Term]) -> dict[Bindable, Term]:
    resolved: dict[Bindable, Term] = {}

    def resolve(term: Term, visiting: tuple[Bindable, ...]) -> Term:
        if isinstance(term, Function):
            return Function(term.symbol, tuple(resolve(arg, visiting) for arg in term.args))
        if term in resolved:
            return resolved[term]  # type: ignore[index]
        if term in bindings and term != bindings[term]:  # type: ignore[comparison-overlap]
            if term in visiting:
                raise CyclicBindings(term, bindings[term])  # type: ignore[arg-type]
            value = resolve(bindings[term], (*visiting, term))  # type: ignore[arg-type]
            if occurs(term, value):
                raise CyclicBindings(term, value)  # type: ignore[arg-type]
            resolved[term] = value  # type: ignore[index]
            return value
        return term

    for key in bindings:
        resolve(key, ())
    return {key: resolved.get(key, bindings[key]) for key in bindings}


EMPTY = Substitution()
