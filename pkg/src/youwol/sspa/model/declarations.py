"""Event and state declarations: arities and key positions."""

# standard library
from dataclasses import dataclass
from enum import Enum

# typing
from typing import Iterable

# relative
from .errors import ModelError


class DeclarationKind(Enum):
    EVENT = "event"
    STATE = "state"


@dataclass(frozen=True)
class Declaration:
    """Declaration of an event or a state.

    The starred parameters form the key identifying a session (events) or an object (states).
    """

    kind: DeclarationKind
    name: str
    params: tuple[tuple[str, bool], ...]

    def __post_init__(self) -> None:
        if not any(is_key for _, is_key in self.params):
            raise ModelError(f"{self.kind.value} '{self.name}' declares no key parameter")

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def key_positions(self) -> tuple[int, ...]:
        return tuple(index for index, (_, is_key) in enumerate(self.params) if is_key)

    def __str__(self) -> str:
        params = ", ".join(f"*{name}" if is_key else name for name, is_key in self.params)
        return f"{self.kind.value} {self.name}({params});"


class Declarations:
    """Lookup table over the declarations of a model."""

    def __init__(self, declarations: Iterable[Declaration] = ()):
        self._by_name: dict[str, Declaration] = {}
        for declaration in declarations:
            self.add(declaration)

    def add(self, declaration: Declaration) -> None:
        if declaration.name in self._by_name:
            raise ModelError(f"'{declaration.name}' is declared twice")
        self._by_name[declaration.name] = declaration

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def get(self, name: str, kind: DeclarationKind, arity: int, rule_name: str = "") -> Declaration:
        """Get the declaration of an event or state, checking its kind and arity.

        Args:
            name (str): the event or state name
            kind (DeclarationKind): the expected kind
            arity (int): number of arguments at the use site
            rule_name (str): the rule using the name, for error messages

        Returns:
            Declaration: the declaration

        Raises:
            ModelError: if the name is undeclared, of another kind, or used with the wrong arity
        """
        declaration = self._by_name.get(name)
        if declaration is None:
            raise ModelError(f"undeclared {kind.value} '{name}'", rule_name)
        if declaration.kind != kind:
            raise ModelError(f"'{name}' is declared as {declaration.kind.value}, used as {kind.value}", rule_name)
        if declaration.arity != arity:
            raise ModelError(f"'{name}' expects {declaration.arity} arguments, got {arity}", rule_name)
        return declaration
