"""How objects come to exist and how their arguments evolve, used to drop rules no trace can satisfy."""

# standard library
from collections import defaultdict

# typing
from typing import Iterable, Optional

# application terms
from youwol.sspa.terms import Term, nonces, occurs, placeholders, rename_apart, subterms, unifiable

# application model
from youwol.sspa.model import AccessPattern, Rule, StateAtom, closure


class ProgressAnalysis:
    """Classify the conversions of a model per state argument position.

    A position grows when the post-state argument contains the pre-state argument: along growing conversions an
    earlier value stays a subterm of every later one. Any other conversion resets the position to its post pattern.

    Given the access patterns, a state is realizable when an access pattern or a conversion post-state of the model
    unifies with it. Derived rules only instantiate the conversions of the model.
    """

    def __init__(self, rules: Iterable[Rule], access: Optional[Iterable[AccessPattern]] = None):
        rules = list(rules)
        self._resets: dict[tuple[str, int], list[Term]] = defaultdict(list)
        for rule in rules:
            for conversion in rule.conversions:
                if conversion.pre is None:
                    continue
                for position, (before, after) in enumerate(zip(conversion.pre.args, conversion.post.args)):
                    if not occurs(before, after) and after not in self._resets[(conversion.post.name, position)]:
                        self._resets[(conversion.post.name, position)].append(after)
        self._sources: Optional[dict[str, list[StateAtom]]] = None
        if access is not None:
            self._sources = defaultdict(list)
            for pattern in access:
                self._sources[pattern.pattern.name].append(pattern.pattern)
            for rule in rules:
                for conversion in rule.conversions:
                    self._sources[conversion.post.name].append(conversion.post)

    def resets(self, name: str, position: int) -> list[Term]:
        return list(self._resets.get((name, position), []))

    def realizable(self, state: StateAtom) -> bool:
        """Whether some access pattern or conversion may produce the state; always True without access patterns."""
        if self._sources is None:
            return True
        term = state.as_term()
        avoid = {placeholder.name for placeholder in placeholders(term)}
        for source in self._sources.get(state.name, []):
            (renamed,), _ = rename_apart((source.as_term(),), avoid, nonces(term))
            if unifiable(term, renamed):
                return True
        return False

    def can_evolve(self, earlier: StateAtom, later: StateAtom) -> bool:
        """Whether some instance of the rule lets the object go from earlier to later.

        Args:
            earlier (StateAtom): s
            later (StateAtom): s', same object as s

        Returns:
            bool: False only when some argument position provably cannot evolve
        """
        for position, (before, after) in enumerate(zip(earlier.args, later.args)):
            if position in earlier.key_positions or before == after:
                continue
            if not self._position_can_evolve(earlier.name, position, before, after):
                return False
        return True

    def _position_can_evolve(self, name: str, position: int, before: Term, after: Term) -> bool:
        if placeholders(after) - placeholders(before):
            return True
        for sub in subterms(after):
            if unifiable(sub, before):
                return True
            for pattern in self._resets.get((name, position), []):
                (renamed,), _ = rename_apart((pattern,), {p.name for p in placeholders(after) | placeholders(before)})
                if unifiable(sub, renamed):
                    return True
        return False

    def infeasible(self, rule: Rule) -> bool:
        """Whether the rule reads a state nothing produces, or orders two states of one object in a way no trace can."""
        if not all(self.realizable(state) for state in [*rule.states, *rule.pre_states()]):
            return True
        if len(rule.states) < 2:
            return False
        closed = closure(rule.orderings, rule.states)
        for earlier, later in closed:
            if earlier != later and earlier.key == later.key and not self.can_evolve(earlier, later):
                return True
        return False
