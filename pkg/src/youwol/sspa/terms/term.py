"""Terms of the free algebra: functions, global names, fresh nonces, configurations and variables.

Terms are immutable and hashable. Their textual form is the canonical syntax of the model files:
`f(t, ...)`, `a[]`, `[n]`, `|g|` and a bare identifier for a variable.
"""

# standard library
from dataclasses import dataclass

# typing
from typing import Iterable, Iterator, Union


@dataclass(frozen=True, slots=True)
class Var:
    """Post-assigned placeholder."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Config:
    """Pre-existing placeholder, chosen by the environment.

    Unification treats it exactly as a variable.
    """

    name: str

    def __str__(self) -> str:
        return f"|{self.name}|"


@dataclass(frozen=True, slots=True)
class Name:
    """Global constant."""

    name: str

    def __str__(self) -> str:
        return f"{self.name}[]"


@dataclass(frozen=True, slots=True)
class Nonce:
    """Value generated fresh by one rule application.

    The instance distinguishes applications: renaming a rule apart gives its nonces new instances.
    """

    name: str
    instance: int = 0

    def __str__(self) -> str:
        if self.instance == 0:
            return f"[{self.name}]"
        return f"[{self.name}.{self.instance}]"


@dataclass(frozen=True, slots=True)
class Function:
    symbol: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return f"{self.symbol}({', '.join(str(arg) for arg in self.args)})"


Term = Union[Var, Config, Name, Nonce, Function]
Placeholder = Union[Var, Config]
# Terms a substitution may bind. Nonces bind only to nonces of the same name.
Bindable = Union[Var, Config, Nonce]

_KIND_RANK = {Var: 0, Config: 1, Name: 2, Nonce: 3, Function: 4}


def is_placeholder(term: Term) -> bool:
    return isinstance(term, (Var, Config))


def is_bindable(term: Term) -> bool:
    return isinstance(term, (Var, Config, Nonce))


def term_key(term: Term) -> tuple:
    """Sort key ordering terms by (kind, symbol, args).

    Args:
        term (Term): the term.

    Returns:
        tuple: a key comparable with the key of any other term.
    """
    if isinstance(term, Function):
        return (_KIND_RANK[Function], term.symbol, len(term.args), tuple(term_key(arg) for arg in term.args))
    if isinstance(term, Nonce):
        return (_KIND_RANK[Nonce], term.name, term.instance, ())
    return (_KIND_RANK[type(term)], term.name, 0, ())


def subterms(term: Term) -> Iterator[Term]:
    """Iterate over the term and all its subterms, outermost first."""
    yield term
    if isinstance(term, Function):
        for arg in term.args:
            yield from subterms(arg)


def bindables(term: Term) -> set[Bindable]:
    """Collect the placeholders and nonces of a term."""
    return {sub for sub in subterms(term) if isinstance(sub, (Var, Config, Nonce))}


def placeholders(term: Term) -> set[Placeholder]:
    return {sub for sub in subterms(term) if isinstance(sub, (Var, Config))}


def nonces(term: Term) -> set[Nonce]:
    return {sub for sub in subterms(term) if isinstance(sub, Nonce)}


def occurs(needle: Term, haystack: Term) -> bool:
    return any(sub == needle for sub in subterms(haystack))


def depth(term: Term) -> int:
    """Nesting depth: 1 for atoms, 1 + deepest argument for functions."""
    if isinstance(term, Function) and term.args:
        return 1 + max(depth(arg) for arg in term.args)
    return 1


def is_ground(term: Term) -> bool:
    return not any(isinstance(sub, (Var, Config)) for sub in subterms(term))


def all_bindables(terms: Iterable[Term]) -> set[Bindable]:
    result: set[Bindable] = set()
    for term in terms:
        result |= bindables(term)
    return result
