"""Facts, object states and state conversions."""

# standard library
from dataclasses import dataclass, field

# typing
from typing import Optional, Union

# application terms
from youwol.sspa.terms import Bindable, Function, Substitution, Term, bindables, depth, term_key


@dataclass(frozen=True, slots=True)
class Knowledge:
    """The adversary knows the term: k(t)."""

    term: Term

    def __str__(self) -> str:
        return f"k({self.term})"

    @property
    def args(self) -> tuple[Term, ...]:
        return (self.term,)


@dataclass(frozen=True, slots=True)
class Event:
    """A protocol event. The arguments at key_positions identify the event."""

    name: str
    args: tuple[Term, ...]
    key_positions: tuple[int, ...] = field(default=(0,), compare=False)

    def __str__(self) -> str:
        return f"{self.name}({', '.join(str(arg) for arg in self.args)})"

    @property
    def key(self) -> tuple:
        return (self.name, *(self.args[i] for i in self.key_positions if i < len(self.args)))


Fact = Union[Knowledge, Event]


@dataclass(frozen=True, slots=True)
class StateAtom:
    """State of a tamper-resistant object, identified by the arguments at key_positions.

    Inside a rule a state is identified by its value: two equal states are the same state.
    """

    name: str
    args: tuple[Term, ...]
    key_positions: tuple[int, ...] = field(default=(0,), compare=False)

    def __str__(self) -> str:
        return f"{self.name}({', '.join(str(arg) for arg in self.args)})"

    @property
    def key(self) -> tuple:
        return (self.name, *(self.args[i] for i in self.key_positions if i < len(self.args)))

    def as_term(self) -> Function:
        return Function(self.name, self.args)


@dataclass(frozen=True, slots=True)
class Conversion:
    """State update of one object; an absent pre-state models the creation of the object."""

    pre: Optional[StateAtom]
    post: StateAtom

    def __post_init__(self) -> None:
        if self.pre is not None and self.pre.name != self.post.name:
            raise ValueError(f"Conversion between different objects: {self.pre} and {self.post}")

    def __str__(self) -> str:
        return f"<{self.pre if self.pre is not None else ''}, {self.post}>"


def fact_as_term(fact: Fact) -> Function:
    """Encode a fact as a term, so that facts unify exactly when their encodings do."""
    if isinstance(fact, Knowledge):
        return Function("k", (fact.term,))
    return Function(f"event {fact.name}", fact.args)


def apply_fact(sigma: Substitution, fact: Fact) -> Fact:
    if isinstance(fact, Knowledge):
        return Knowledge(sigma.apply(fact.term))
    return Event(fact.name, sigma.apply_all(fact.args), fact.key_positions)


def apply_state(sigma: Substitution, state: StateAtom) -> StateAtom:
    return StateAtom(state.name, sigma.apply_all(state.args), state.key_positions)


def apply_conversion(sigma: Substitution, conversion: Conversion) -> Conversion:
    pre = apply_state(sigma, conversion.pre) if conversion.pre is not None else None
    return Conversion(pre, apply_state(sigma, conversion.post))


def fact_bindables(fact: Fact) -> set[Bindable]:
    result: set[Bindable] = set()
    for arg in fact.args:
        result |= bindables(arg)
    return result


def state_bindables(state: StateAtom) -> set[Bindable]:
    result: set[Bindable] = set()
    for arg in state.args:
        result |= bindables(arg)
    return result


def fact_depth(fact: Fact) -> int:
    return max((depth(arg) for arg in fact.args), default=0)


def fact_sort_key(fact: Fact) -> tuple:
    return term_key(fact_as_term(fact))


def state_sort_key(state: StateAtom) -> tuple:
    return term_key(state.as_term())


def conversion_sort_key(conversion: Conversion) -> tuple:
    pre = state_sort_key(conversion.pre) if conversion.pre is not None else ()
    return (state_sort_key(conversion.post), pre)


@dataclass(frozen=True, slots=True)
class AccessPattern:
    """Objects the adversary may use, e.g. access tpm(bob[], |p|)."""

    pattern: StateAtom

    def __str__(self) -> str:
        return f"access {self.pattern};"
