"""Derivation trees of attack witnesses, rebuilt from the provenance of the knowledge base.

The provenance of the witness rule is unfolded into instances of the initial rules. The instances are then ordered
into a trace by replaying their conversions from the initial states of the witness; the order fixes the period of
every instance, hence the indices and state sets of the tree edges.
"""

# standard library
from dataclasses import dataclass, field

# typing
from typing import Iterator, Optional, Union

# application terms
from youwol.sspa.terms import EMPTY, NoUnifier, Substitution, unify_all

# application model
from youwol.sspa.model import (
    Conversion,
    Event,
    Fact,
    ProvenanceKind,
    Rule,
    StateAtom,
    apply_conversion,
    apply_fact,
    apply_state,
    conversion_sort_key,
    state_sort_key,
)

# application engine
from youwol.sspa.engine import KnowledgeBase

# relative
from .check import Witness
from .errors import MalformedProvenance

Label = Union[Fact, tuple[Conversion, ...]]

SEARCH_BUDGET = 20_000


@dataclass
class Edge:
    """An edge entering a node: what flows in, under which states, at which index.

    A missing child marks a premise no rule supplies: it is left to the adversary.
    """

    label: Label
    states: tuple[StateAtom, ...]
    index: int
    child: Optional["DerivationNode"] = None


@dataclass
class DerivationNode:
    rule_name: str
    rule: Rule
    instance: Rule
    period: int
    inputs: list[Edge] = field(default_factory=list)

    @property
    def is_transferring(self) -> bool:
        return self.instance.is_transferring

    def walk(self) -> Iterator["DerivationNode"]:
        yield self
        for edge in self.inputs:
            if edge.child is not None:
                yield from edge.child.walk()


@dataclass(frozen=True)
class TraceStep:
    """One rule application of the linear trace; period counts the conversions applied before it."""

    rule_name: str
    instance: Rule
    period: int


@dataclass
class DerivationTree:
    event: Event
    root: DerivationNode
    root_edge: Edge
    transitions: int
    period_states: tuple[tuple[StateAtom, ...], ...]
    steps: tuple[TraceStep, ...]

    @property
    def initial_states(self) -> tuple[StateAtom, ...]:
        return self.period_states[0]

    def nodes(self) -> list[DerivationNode]:
        return list(self.root.walk())

    def edges(self) -> list[Edge]:
        return [self.root_edge] + [edge for node in self.nodes() for edge in node.inputs]

    def index_of(self, period: int) -> int:
        return self.transitions + 1 - period


class _Draft:
    def __init__(self, number: int, rule_name: str, rule: Rule, theta: Substitution):
        self.number = number
        self.rule_name = rule_name
        self.rule = rule
        self.instance = rule.apply(theta)
        self.open: list[Fact] = self.instance.sorted_premises()
        self.supplied: list[tuple[Fact, "_Draft"]] = []

    @property
    def is_transferring(self) -> bool:
        return self.instance.is_transferring


class _Unfolding:
    """Unfold provenance records into instances of the initial rules."""

    def __init__(self, witness_rule: Rule, knowledge_base: KnowledgeBase):
        self._witness = witness_rule
        self._knowledge_base = knowledge_base
        self.drafts: list[_Draft] = []

    def _fail(self, reason: str) -> MalformedProvenance:
        return MalformedProvenance(str(self._witness), reason)

    def _parent(self, rule: Rule, position: int) -> Rule:
        parents = rule.provenance.parents
        if position >= len(parents) or parents[position] < 0:
            raise self._fail(f"a parent of {rule.provenance.describe()} was never inserted")
        try:
            return self._knowledge_base.get(parents[position])
        except KeyError as error:
            raise self._fail(f"rule #{parents[position]} is not archived") from error

    def unfold(self, rule: Rule, theta: Substitution) -> _Draft:
        provenance = rule.provenance
        if provenance.kind == ProvenanceKind.BASE:
            draft = _Draft(len(self.drafts), provenance.rule_name or rule.name, rule, theta)
            self.drafts.append(draft)
            return draft
        if len(provenance.parent_sigmas) != 2:
            raise self._fail(f"{provenance.describe()} does not record its parent substitutions")
        first, second = self._parent(rule, 0), self._parent(rule, 1)
        sigma_first, sigma_second = provenance.parent_sigmas
        start = len(self.drafts)
        root = self.unfold(second, theta.compose(sigma_second))
        below_root = self.drafts[start:]
        child = self.unfold(first, theta.compose(sigma_first))
        if provenance.kind == ProvenanceKind.TRANSFORMED:
            return root
        if provenance.pivot is None:
            raise self._fail(f"{provenance.describe()} has no pivot")
        pivot = apply_fact(theta.compose(sigma_second), provenance.pivot)
        for draft in below_root:
            if pivot in draft.open:
                draft.open.remove(pivot)
                draft.supplied.append((pivot, child))
                return root
        raise self._fail(f"no open premise {pivot} below {root.rule_name}")


def _states_map(states: list[StateAtom], binding: Substitution) -> dict[tuple, StateAtom]:
    bound = [apply_state(binding, state) for state in states]
    return {state.key: state for state in sorted(bound, key=state_sort_key)}


def _fit_states(
    wanted: list[StateAtom], current: dict[tuple, StateAtom], binding: Substitution, exact: bool
) -> Optional[Substitution]:
    for state in wanted:
        state = apply_state(binding, state)
        here = {apply_state(binding, s).key: apply_state(binding, s) for s in current.values()}
        found = here.get(state.key)
        if exact:
            if found != state:
                return None
            continue
        candidates = ([found] if found is not None else []) + [
            other for other in here.values() if other.name == state.name and other is not found
        ]
        for candidate in candidates:
            try:
                binding = unify_all([(state.as_term(), candidate.as_term())], binding)
                break
            except NoUnifier:
                continue
        else:
            return None
    return binding


@dataclass
class _Replay:
    fired: list[_Draft]
    period_of: dict[int, int]
    current: dict[tuple, StateAtom]
    periods: list[list[StateAtom]]
    binding: Substitution

    def copy(self) -> "_Replay":
        return _Replay(
            list(self.fired), dict(self.period_of), dict(self.current), [list(p) for p in self.periods], self.binding
        )

    @property
    def period(self) -> int:
        return len(self.periods) - 1


class _Linearization:
    """Order the unfolded instances into a trace by replaying their conversions."""

    def __init__(self, drafts: list[_Draft], root: _Draft, initial: list[StateAtom], witness: Rule):
        self._drafts = drafts
        self._root = root
        self._initial = initial
        self._witness = witness
        self._budget = SEARCH_BUDGET

    def _ready(self, draft: _Draft, replay: _Replay) -> bool:
        fired = {other.number for other in replay.fired}
        return draft.number not in fired and all(child.number in fired for _, child in draft.supplied)

    def _fire_consistent(self, draft: _Draft, replay: _Replay, exact: bool) -> Optional[_Replay]:
        binding = _fit_states(draft.instance.sorted_states(), replay.current, replay.binding, exact)
        if binding is None:
            return None
        replay = replay.copy()
        replay.binding = binding
        replay.current = _states_map(list(replay.current.values()), binding)
        replay.fired.append(draft)
        replay.period_of[draft.number] = replay.period
        return replay

    def _fire_transfer(self, draft: _Draft, replay: _Replay, exact: bool) -> Optional[_Replay]:
        conversions = draft.instance.sorted_conversions()
        wanted = draft.instance.sorted_states() + [c.pre for c in conversions if c.pre is not None]
        binding = _fit_states(wanted, replay.current, replay.binding, exact)
        if binding is None:
            return None
        current = _states_map(list(replay.current.values()), binding)
        for conversion in conversions:
            if conversion.pre is None and apply_state(binding, conversion.post).key in current:
                return None
        replay = replay.copy()
        replay.binding = binding
        replay.fired.append(draft)
        replay.period_of[draft.number] = replay.period
        for conversion in conversions:
            converted = apply_conversion(binding, conversion)
            if converted.pre is not None:
                current.pop(converted.pre.key, None)
            current[converted.post.key] = converted.post
        replay.current = current
        replay.periods.append(list(current.values()))
        return replay

    def _fire(self, draft: _Draft, replay: _Replay, exact: bool) -> Optional[_Replay]:
        if draft.is_transferring:
            return self._fire_transfer(draft, replay, exact)
        return self._fire_consistent(draft, replay, exact)

    def _search(self, replay: _Replay) -> Optional[_Replay]:
        self._budget -= 1
        if self._budget < 0:
            raise MalformedProvenance(str(self._witness), "no trace found within the search budget")
        progress = True
        while progress:
            progress = False
            for draft in self._drafts:
                if draft is self._root or draft.is_transferring or not self._ready(draft, replay):
                    continue
                fired = self._fire_consistent(draft, replay, exact=True)
                if fired is not None:
                    replay, progress = fired, True

        pending = [draft for draft in self._drafts if self._ready(draft, replay) and draft is not self._root]
        if not pending and len(replay.fired) == len(self._drafts) - 1:
            for exact in (True, False):
                done = self._fire_consistent(self._root, replay, exact)
                if done is not None:
                    return done
            return None

        branches = [(draft, True) for draft in pending if draft.is_transferring]
        branches += [(draft, False) for draft in pending if not draft.is_transferring]
        branches += [(draft, False) for draft in pending if draft.is_transferring]
        for draft, exact in branches:
            fired = self._fire(draft, replay, exact)
            if fired is None:
                continue
            found = self._search(fired)
            if found is not None:
                return found
        return None

    def run(self) -> _Replay:
        initial = _states_map(self._initial, EMPTY)
        replay = _Replay([], {}, initial, [list(initial.values())], EMPTY)
        found = self._search(replay)
        if found is None:
            raise MalformedProvenance(str(self._witness), "the conversions cannot be ordered into a trace")
        return found


def _untracked_states(drafts: list[_Draft], initial: list[StateAtom]) -> list[StateAtom]:
    """States of objects no initial state describes and no conversion creates."""
    known = {state.key for state in initial}
    known |= {c.post.key for draft in drafts for c in draft.instance.conversions if c.pre is None}
    extra: dict[tuple, StateAtom] = {}
    for draft in drafts:
        states = list(draft.instance.sorted_states()) + draft.instance.pre_states()
        for state in states:
            if state.key not in known and state.key not in extra:
                extra[state.key] = state
    return list(extra.values())


def _reads(instance: Rule, state: StateAtom) -> bool:
    return state in instance.states or state in instance.pre_states()


class _TreeBuilder:
    def __init__(self, replay: _Replay):
        self._replay = replay
        self._binding = replay.binding
        self._periods = [
            tuple(sorted({apply_state(self._binding, s) for s in period}, key=state_sort_key))
            for period in replay.periods
        ]
        self.transitions = len(self._periods) - 1
        self.period_states = tuple(self._periods)
        self._nodes: dict[int, DerivationNode] = {}

    def states(self, period: int) -> tuple[StateAtom, ...]:
        return self._periods[period]

    def index(self, period: int) -> int:
        return self.transitions + 1 - period

    def _node(self, draft: _Draft) -> DerivationNode:
        if draft.number not in self._nodes:
            self._nodes[draft.number] = DerivationNode(
                rule_name=draft.rule_name,
                rule=draft.rule,
                instance=draft.instance.apply(self._binding),
                period=self._replay.period_of[draft.number],
            )
        return self._nodes[draft.number]

    def _output_period(self, draft: _Draft) -> int:
        period = self._replay.period_of[draft.number]
        return period + 1 if draft.is_transferring else period

    def build(self, root: _Draft) -> DerivationNode:
        order = self._replay.fired
        for draft in order:
            node = self._node(draft)
            for fact, child in draft.supplied:
                child_period = self._output_period(child)
                node.inputs.append(
                    Edge(
                        apply_fact(self._binding, fact),
                        self.states(child_period),
                        self.index(child_period),
                        self._node(child),
                    )
                )
            for fact in draft.open:
                node.inputs.append(
                    Edge(apply_fact(self._binding, fact), self.states(node.period), self.index(node.period))
                )

        for position, draft in enumerate(order):
            if not draft.is_transferring:
                continue
            node = self._node(draft)
            conversions = tuple(sorted(node.instance.conversions, key=conversion_sort_key))
            posts = [conversion.post for conversion in conversions]
            reader = next(
                (
                    self._node(later)
                    for later in order[position + 1 :]
                    if any(_reads(self._node(later).instance, post) for post in posts)
                ),
                self._node(root),
            )
            period = node.period + 1
            reader.inputs.append(Edge(conversions, self.states(period), self.index(period), node))
        return self._node(root)


def reconstruct_trace(witness: Witness, knowledge_base: KnowledgeBase) -> DerivationTree:
    """Rebuild the derivation tree of an attack witness.

    Args:
        witness (Witness): the witness of an Attack verdict
        knowledge_base (KnowledgeBase): the knowledge base the witness rule comes from

    Returns:
        DerivationTree: the tree, and the linear trace it was built from

    Raises:
        MalformedProvenance: if the provenance records do not fit together
    """
    rule = witness.rule
    if not isinstance(rule.conclusion, Event):
        raise MalformedProvenance(str(rule), "the witness rule does not conclude an event")
    unfolding = _Unfolding(rule, knowledge_base)
    root = unfolding.unfold(rule, witness.sigma)
    if root.is_transferring or not isinstance(root.instance.conclusion, Event):
        raise MalformedProvenance(str(rule), f"the root instance {root.rule_name} does not conclude an event")

    initial = sorted(rule.apply(witness.sigma).states, key=state_sort_key)
    initial += _untracked_states(unfolding.drafts, initial)
    replay = _Linearization(unfolding.drafts, root, initial, rule).run()

    builder = _TreeBuilder(replay)
    root_node = builder.build(root)
    event = apply_fact(replay.binding, root.instance.conclusion)
    assert isinstance(event, Event)
    steps = tuple(
        TraceStep(draft.rule_name, draft.instance.apply(replay.binding), replay.period_of[draft.number])
        for draft in replay.fired
    )
    return DerivationTree(
        event=event,
        root=root_node,
        root_edge=Edge(event, builder.states(builder.transitions), 1, root_node),
        transitions=builder.transitions,
        period_states=builder.period_states,
        steps=steps,
    )
