"""The ~ partition of state sets and the ≤ preorder given by rule orderings."""

# standard library
from collections import defaultdict

# typing
from typing import Iterable

# relative
from .facts import Fact, StateAtom, fact_sort_key, state_sort_key

Partition = tuple[StateAtom, ...]


def partition(states: Iterable[StateAtom]) -> list[Partition]:
    """Group states by object: same name and syntactically equal key arguments.

    Args:
        states (Iterable[StateAtom]): the state set

    Returns:
        list[Partition]: the partitions, each sorted, in a deterministic order
    """
    groups: dict[tuple, list[StateAtom]] = defaultdict(list)
    for state in set(states):
        groups[state.key].append(state)
    partitions = [tuple(sorted(group, key=state_sort_key)) for group in groups.values()]
    return sorted(partitions, key=lambda part: state_sort_key(part[0]))


def same_object(left: StateAtom, right: StateAtom) -> bool:
    return left.key == right.key


def closure(
    orderings: Iterable[tuple[StateAtom, StateAtom]], states: Iterable[StateAtom] = ()
) -> set[tuple[StateAtom, StateAtom]]:
    """Reflexive and transitive closure of an ordering relation.

    Args:
        orderings (Iterable[tuple[StateAtom, StateAtom]]): pairs (s, s') meaning s ≤ s'
        states (Iterable[StateAtom]): states made reflexive even when no pair mentions them

    Returns:
        set[tuple[StateAtom, StateAtom]]: the closure
    """
    successors: dict[StateAtom, set[StateAtom]] = defaultdict(set)
    nodes = set(states)
    for left, right in orderings:
        successors[left].add(right)
        nodes.update((left, right))
    result: set[tuple[StateAtom, StateAtom]] = set()
    for start in nodes:
        reached = {start}
        stack = [start]
        while stack:
            for following in successors[stack.pop()]:
                if following not in reached:
                    reached.add(following)
                    stack.append(following)
        result.update((start, end) for end in reached)
    return result


def upward(state: StateAtom, closed: set[tuple[StateAtom, StateAtom]], within: Iterable[StateAtom]) -> set[StateAtom]:
    """States of within that are ≥ state."""
    return {other for other in within if (state, other) in closed}


def join_mo(
    mappings: Iterable[tuple[Fact, StateAtom]], orderings: Iterable[tuple[StateAtom, StateAtom]]
) -> set[tuple[Fact, StateAtom]]:
    """M·O: a fact mapped to s also holds at every state s' with s ≤ s'.

    Args:
        mappings (Iterable[tuple[Fact, StateAtom]]): M
        orderings (Iterable[tuple[StateAtom, StateAtom]]): O, taken reflexively and transitively

    Returns:
        set[tuple[Fact, StateAtom]]: the upward closure of M along O
    """
    mappings = list(mappings)
    closed = closure(orderings, (state for _, state in mappings))
    above: dict[StateAtom, set[StateAtom]] = defaultdict(set)
    for left, right in closed:
        above[left].add(right)
    return {(fact, later) for fact, state in mappings for later in above[state]}


def sorted_pairs(pairs: Iterable[tuple[StateAtom, StateAtom]]) -> list[tuple[StateAtom, StateAtom]]:
    return sorted(pairs, key=lambda pair: (state_sort_key(pair[0]), state_sort_key(pair[1])))


def sorted_mappings(mappings: Iterable[tuple[Fact, StateAtom]]) -> list[tuple[Fact, StateAtom]]:
    return sorted(mappings, key=lambda pair: (fact_sort_key(pair[0]), state_sort_key(pair[1])))
