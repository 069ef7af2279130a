"""Parse model files into declarations, rules, access patterns and queries."""

# standard library
import functools
import importlib.resources

from dataclasses import dataclass, field

# typing
from typing import Any, Iterable, Optional, Union

# third parties
from lark import Lark, Token, Transformer, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken
from lark import v_args

# application terms
from youwol.sspa.terms import Config, Function, Name, Nonce, Term, Var, nonces, subterms

# application model
from youwol.sspa.model import (
    AccessPattern,
    Conversion,
    Declaration,
    DeclarationKind,
    Declarations,
    Event,
    Fact,
    Knowledge,
    ModelError,
    Provenance,
    ProvenanceKind,
    Rule,
    StateAtom,
)

# relative
from .errors import ParseError
from .model_file import Model, Query

KNOWLEDGE = "k"


@dataclass(frozen=True)
class _Atom:
    name: str
    args: tuple[Term, ...]
    label: Optional[str] = None


@dataclass(frozen=True)
class _Facts:
    atoms: list[_Atom]


@dataclass(frozen=True)
class _Mappings:
    pairs: list[tuple[int, str]]


@dataclass(frozen=True)
class _Tail:
    states: list[_Atom]
    orderings: Optional[list[tuple[str, str]]]
    conclusion: Union[_Atom, list[tuple[Optional[_Atom], _Atom]]]


@dataclass(frozen=True)
class _Body:
    facts: list[_Atom] = field(default_factory=list)
    mappings: Optional[list[tuple[int, str]]] = None
    tail: Optional[_Tail] = None


@dataclass(frozen=True)
class _Statement:
    kind: str
    name: str = ""
    body: Optional[_Body] = None
    atom: Optional[_Atom] = None
    params: tuple[tuple[str, bool], ...] = ()


def _label(token: Token) -> str:
    return str(token)[1:]


@v_args(inline=True)
class _ToStatements(Transformer):
    # pylint: disable=missing-function-docstring,no-self-use

    def start(self, *statements: _Statement) -> list[_Statement]:
        return list(statements)

    def declaration(self, kind: Token, name: Token, params: tuple = ()) -> _Statement:
        return _Statement(kind=str(kind), name=str(name), params=params)

    def params(self, *params: tuple[str, bool]) -> tuple[tuple[str, bool], ...]:
        return params

    def param(self, *tokens: Token) -> tuple[str, bool]:
        return str(tokens[-1]), len(tokens) == 2

    def rule(self, name: Token, body: _Body) -> _Statement:
        return _Statement(kind="rule", name=str(name), body=body)

    def query(self, name: Token, body: _Body) -> _Statement:
        return _Statement(kind="query", name=str(name), body=body)

    def access(self, atom: _Atom) -> _Statement:
        return _Statement(kind="access", atom=atom)

    def body(self, *children: Any) -> _Body:
        facts: list[_Atom] = []
        mappings = None
        tail = None
        for child in children:
            if isinstance(child, _Facts):
                facts = child.atoms
            elif isinstance(child, _Mappings):
                mappings = child.pairs
            else:
                tail = child
        return _Body(facts=facts, mappings=mappings, tail=tail)

    def facts(self, *atoms: _Atom) -> _Facts:
        return _Facts(list(atoms))

    def mappings(self, *pairs: tuple[int, str]) -> _Mappings:
        return _Mappings(list(pairs))

    def mapping(self, index: Token, label: Token) -> tuple[int, str]:
        return int(index), _label(label)

    def stateful_tail(self, states: list[_Atom], *rest: Any) -> _Tail:
        orderings = rest[0] if len(rest) == 2 else None
        return _Tail(states=states, orderings=orderings, conclusion=rest[-1])

    def stateless_tail(self, conclusion: Any) -> _Tail:
        return _Tail(states=[], orderings=None, conclusion=conclusion)

    def atoms(self, *atoms: _Atom) -> list[_Atom]:
        return list(atoms)

    def orderings(self, *pairs: tuple[str, str]) -> list[tuple[str, str]]:
        return list(pairs)

    def ordering(self, lower: Token, upper: Token) -> tuple[str, str]:
        return _label(lower), _label(upper)

    def fact_conclusion(self, atom: _Atom) -> _Atom:
        return atom

    def conversions_conclusion(self, *conversions: tuple) -> list:
        return list(conversions)

    def conversion(self, *atoms: _Atom) -> tuple[Optional[_Atom], _Atom]:
        return (atoms[0], atoms[1]) if len(atoms) == 2 else (None, atoms[0])

    def atom(self, name: Token, *rest: Any) -> _Atom:
        args: tuple[Term, ...] = ()
        label = None
        for item in rest:
            if isinstance(item, Token):
                label = _label(item)
            else:
                args = item
        return _Atom(str(name), args, label)

    def args(self, *terms: Term) -> tuple[Term, ...]:
        return terms

    def function(self, symbol: Token, args: tuple[Term, ...] = ()) -> Term:
        return Function(str(symbol), args)

    def name(self, name: Token) -> Term:
        return Name(str(name))

    def nonce(self, name: Token, instance: Optional[Token] = None) -> Term:
        return Nonce(str(name), int(instance) if instance is not None else 0)

    def config(self, name: Token) -> Term:
        return Config(str(name))

    def var(self, name: Token) -> Term:
        return Var(str(name))


@functools.lru_cache(maxsize=1)
def _lark() -> Lark:
    grammar = (importlib.resources.files(__package__) / "grammar.lark").read_text(encoding="utf-8")
    return Lark(grammar, parser="lalr", maybe_placeholders=False)


def _end_position(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse_error(error: UnexpectedInput, text: str) -> ParseError:
    if isinstance(error, UnexpectedEOF):
        line, column = _end_position(text)
        return ParseError(line, column, error.expected)
    if isinstance(error, UnexpectedToken):
        if error.token.type == "$END":
            line, column = _end_position(text)
            return ParseError(line, column, error.expected)
        return ParseError(error.line, error.column, error.expected, str(error.token))
    if isinstance(error, UnexpectedCharacters):
        return ParseError(error.line, error.column, error.allowed or (), error.char)
    return ParseError(getattr(error, "line", 0), getattr(error, "column", 0), ())


class _ModelBuilder:
    """Resolve atoms against the declarations and apply the default annotations.

    Function symbols keep the arity of their first use across the model.
    """

    def __init__(self, declarations: Declarations):
        self._declarations = declarations
        self._arities: dict[str, int] = {}
        self.warnings: list[str] = []

    def _check_arities(self, args: Iterable[Term], rule_name: str) -> None:
        for arg in args:
            for sub in subterms(arg):
                if not isinstance(sub, Function):
                    continue
                known = self._arities.setdefault(sub.symbol, len(sub.args))
                if known != len(sub.args):
                    raise ModelError(
                        f"function {sub.symbol} used with {len(sub.args)} arguments, before with {known}", rule_name
                    )

    def fact(self, atom: _Atom, rule_name: str, conclusion_of_query: bool = False) -> Fact:
        """Knowledge for k(t), an event otherwise; query conclusions need no declaration."""
        self._check_arities(atom.args, rule_name)
        if atom.name == KNOWLEDGE:
            if len(atom.args) != 1:
                raise ModelError(f"k expects 1 argument, got {len(atom.args)}", rule_name)
            return Knowledge(atom.args[0])
        if conclusion_of_query and not any(d.name == atom.name for d in self._declarations):
            return Event(atom.name, atom.args, tuple(range(len(atom.args))))
        declaration = self._declarations.get(atom.name, DeclarationKind.EVENT, len(atom.args), rule_name)
        return Event(atom.name, atom.args, declaration.key_positions)

    def state(self, atom: _Atom, rule_name: str) -> StateAtom:
        self._check_arities(atom.args, rule_name)
        declaration = self._declarations.get(atom.name, DeclarationKind.STATE, len(atom.args), rule_name)
        return StateAtom(atom.name, atom.args, declaration.key_positions)

    def rule(self, name: str, body: _Body, is_query: bool = False) -> Rule:
        assert body.tail is not None
        premises = [self.fact(atom, name) for atom in body.facts]
        labelled: dict[str, StateAtom] = {}
        states: list[StateAtom] = []
        for atom in body.tail.states:
            state = self.state(atom, name)
            states.append(state)
            if atom.label is not None:
                if atom.label in labelled:
                    raise ModelError(f"label ^{atom.label} used twice", name)
                labelled[atom.label] = state

        conclusion: Union[Fact, frozenset[Conversion]]
        if isinstance(body.tail.conclusion, _Atom):
            conclusion = self.fact(body.tail.conclusion, name, conclusion_of_query=is_query)
        else:
            conclusion = frozenset(
                Conversion(self.state(pre, name) if pre is not None else None, self.state(post, name))
                for pre, post in body.tail.conclusion
            )

        def resolve(label: str) -> StateAtom:
            if label not in labelled:
                raise ModelError(f"unknown state label ^{label}", name)
            return labelled[label]

        if body.mappings is None:
            mappings = frozenset((fact, state) for fact in premises for state in states)
        else:
            for index, _ in body.mappings:
                if not 1 <= index <= len(premises):
                    raise ModelError(f"mapping refers to premise {index}, the rule has {len(premises)}", name)
            mappings = frozenset((premises[index - 1], resolve(label)) for index, label in body.mappings)
        if body.tail.orderings is None:
            orderings = frozenset((left, right) for left in states for right in states)
        else:
            orderings = frozenset((resolve(lower), resolve(upper)) for lower, upper in body.tail.orderings)

        rule = Rule(
            premises=frozenset(premises),
            mappings=mappings,
            states=frozenset(states),
            orderings=orderings,
            conclusion=conclusion,
            name=name,
            provenance=Provenance(ProvenanceKind.BASE, rule_name=name),
        )
        self._check_nonces(rule)
        return rule

    def _check_nonces(self, rule: Rule) -> None:
        anchors: set[Nonce] = set()
        keyed: list[Union[Event, StateAtom]] = [fact for fact in rule.premises if isinstance(fact, Event)]
        if isinstance(rule.conclusion, Event):
            keyed.append(rule.conclusion)
        keyed.extend(conversion.post for conversion in rule.conversions)
        for atom in keyed:
            for position in atom.key_positions:
                if position < len(atom.args):
                    anchors |= nonces(atom.args[position])
        for nonce in sorted(rule.nonces() - anchors, key=str):
            self.warnings.append(f"rule '{rule.name}': nonce {nonce} is not the key of an event or of a created state")


def _declarations(statements: Iterable[_Statement]) -> Declarations:
    declarations = Declarations()
    for statement in statements:
        if statement.kind in ("event", "state"):
            try:
                declarations.add(Declaration(DeclarationKind(statement.kind), statement.name, statement.params))
            except ModelError as error:
                raise ModelError(f"{error} (declaration '{statement.name}')") from error
    return declarations


def parse_spec(text: str) -> Model:
    """Parse the text of a model file.

    Args:
        text (str): the model, in the .sspa syntax

    Returns:
        Model: declarations, rules with explicit or default annotations, access patterns and queries

    Raises:
        ParseError: on a syntax error, with its position and the expected tokens
        ModelError: on arity mismatches, undeclared events or states and ill-formed annotations
    """
    try:
        tree = _lark().parse(text)
    except UnexpectedInput as error:
        raise _parse_error(error, text) from error
    statements: list[_Statement] = _ToStatements().transform(tree)

    declarations = _declarations(statements)
    builder = _ModelBuilder(declarations)
    model = Model(declarations=declarations)
    names: set[str] = set()
    for statement in statements:
        if statement.kind in ("rule", "query"):
            if statement.name in names:
                raise ModelError(f"'{statement.name}' is defined twice")
            names.add(statement.name)
        if statement.kind == "rule" and statement.body is not None:
            model.rules.append(builder.rule(statement.name, statement.body))
        elif statement.kind == "query" and statement.body is not None:
            rule = builder.rule(statement.name, statement.body, is_query=True)
            if not isinstance(rule.conclusion, Event) or rule.conclusion.name != statement.name:
                raise ModelError(f"a query concludes the event {statement.name}()", statement.name)
            model.queries.append(Query(statement.name, rule))
        elif statement.kind == "access" and statement.atom is not None:
            model.access.append(AccessPattern(builder.state(statement.atom, "access")))
    model.warnings = builder.warnings
    return model


def parse_rule(text: str, model: Model) -> Rule:
    """Parse a single `rule name: ...;` statement against the declarations of a model.

    Args:
        text (str): the rule statement
        model (Model): the model giving the declarations

    Returns:
        Rule: the rule
    """
    try:
        tree = _lark().parse(text)
    except UnexpectedInput as error:
        raise _parse_error(error, text) from error
    statements: list[_Statement] = _ToStatements().transform(tree)
    rules = [statement for statement in statements if statement.kind in ("rule", "query")]
    if len(rules) != 1 or rules[0].body is None:
        raise ModelError(f"expected one rule, got {len(rules)}")
    return _ModelBuilder(model.declarations).rule(rules[0].name, rules[0].body, is_query=True)
