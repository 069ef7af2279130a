"""Saturation: compose and transform rules until no new rule survives implication."""

# standard library
import itertools
import time

from collections import deque
from dataclasses import dataclass, field

# typing
from typing import Callable, Iterator, Optional

# application configuration
from youwol.sspa.configuration import EngineLimits

# application services
from youwol.sspa.services import Report, silent_report

# application terms
from youwol.sspa.terms import NoUnifier, unifiable

# application model
from youwol.sspa.model import (
    Fact,
    InvalidRule,
    Rule,
    all_in_n,
    all_reserved,
    fact_as_term,
    is_pivot,
    validate,
)
from youwol.sspa.parser import Model

# relative
from .compose import compose_rules
from .errors import LimitExceeded, SaturationTimeout, SideConditionViolated
from .knowledge_base import KnowledgeBase, SaturationStats
from .progress import ProgressAnalysis
from .transform import enumerate_cover_maps, transform_state

Goal = Callable[[Rule], bool]


@dataclass
class SaturationResult:
    """B_v (every active rule at the end of the run) and B (the rules that can conclude an attack directly)."""

    b_v: list[Rule]
    b: list[Rule]
    knowledge_base: KnowledgeBase
    stats: SaturationStats
    initial_count: int = 0
    truncated_by: Optional[RuntimeError] = None
    reached_goal: bool = False
    limits_hit: list[str] = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return self.truncated_by is not None or bool(self.limits_hit)


def is_final(rule: Rule) -> bool:
    """An event conclusion from events and singletons only."""
    return rule.concludes_event and all_in_n(rule)


def _pivots(rule: Rule, target: Rule) -> Iterator[Fact]:
    conclusion = fact_as_term(rule.conclusion_fact)
    for fact in target.sorted_premises():
        if is_pivot(fact, target) and unifiable(conclusion, fact_as_term(fact)):
            yield fact


class Saturation:
    """The fixpoint loop.

    Rules are processed in insertion order. Each processed rule is paired with the active rules, composition pairs
    first, then transformation pairs.
    """

    def __init__(self, model: Model, limits: Optional[EngineLimits] = None, report: Optional[Report] = None):
        """Simple constructor.

        Args:
            model (Model): the parsed model; its query rules are saturated with its rules
            limits (Optional[EngineLimits]): the limits, defaults when None
            report (Optional[Report]): the report
        """
        self._model = model
        self._limits = limits if limits is not None else EngineLimits()
        self._report = (report if report is not None else silent_report()).get_sub_report(
            "Saturation", init_status="ComponentInitialized", default_status_level="NOTIFY"
        )
        self.knowledge_base = KnowledgeBase(
            limits=self._limits, progress=ProgressAnalysis(model.initial_rules(), model.access), report=self._report
        )
        self._pending: deque[int] = deque()

    def _add(self, rule: Rule, goal: Optional[Goal]) -> bool:
        inserted = self.knowledge_base.add_rule(rule)
        if inserted is None:
            return False
        assert inserted.rule_id is not None
        self._pending.append(inserted.rule_id)
        return goal is not None and is_final(inserted) and goal(inserted)

    def _compositions(self, rule: Rule) -> Iterator[Rule]:
        knowledge_base = self.knowledge_base
        candidates: list[tuple[Rule, Rule]] = []
        if rule.is_consistent and all_reserved(rule):
            candidates.extend((rule, target) for target in knowledge_base.rules())
        for other in knowledge_base.rules():
            if other.rule_id != rule.rule_id and other.is_consistent and all_reserved(other):
                candidates.append((other, rule))
        for composed, target in candidates:
            if composed.rule_id not in knowledge_base or target.rule_id not in knowledge_base:
                continue
            for pivot in list(_pivots(composed, target)):
                try:
                    result = compose_rules(composed, target, pivot)
                except (NoUnifier, SideConditionViolated):
                    continue
                except InvalidRule:
                    knowledge_base.stats.invalid += 1
                    continue
                knowledge_base.stats.compositions += 1
                yield result

    def _transformations(self, rule: Rule) -> Iterator[Rule]:
        knowledge_base = self.knowledge_base
        require_event = not self._limits.transform_knowledge

        def eligible_consistent(candidate: Rule) -> bool:
            return (
                candidate.is_consistent
                and all_reserved(candidate)
                and (candidate.concludes_event or not require_event)
                and bool(candidate.states)
            )

        candidates: list[tuple[Rule, Rule]] = []
        if rule.is_transferring and all_reserved(rule):
            candidates.extend((rule, other) for other in knowledge_base.rules() if eligible_consistent(other))
        if eligible_consistent(rule):
            candidates.extend(
                (other, rule) for other in knowledge_base.rules() if other.is_transferring and all_reserved(other)
            )
        for transferring, consistent in candidates:
            if transferring.rule_id not in knowledge_base or consistent.rule_id not in knowledge_base:
                continue
            for cover in enumerate_cover_maps(transferring, consistent, self._limits.max_partition):
                try:
                    result = transform_state(transferring, consistent, cover, require_event=require_event)
                except SideConditionViolated:
                    continue
                except InvalidRule:
                    knowledge_base.stats.invalid += 1
                    continue
                knowledge_base.stats.transformations += 1
                yield result

    def run(self, goal: Optional[Goal] = None) -> SaturationResult:
        """Saturate the model.

        Args:
            goal (Optional[Goal]): stop as soon as a final rule satisfies it

        Returns:
            SaturationResult: the rule sets, the statistics, and why the run stopped early if it did
        """
        self._report.set_status("Running")
        start = time.monotonic()
        truncated_by: Optional[RuntimeError] = None
        reached_goal = False
        initial = self._model.initial_rules()
        try:
            for rule in initial:
                if self._add(validate(rule), goal):
                    reached_goal = True
                    break
            while self._pending and not reached_goal:
                if time.monotonic() - start > self._limits.timeout:
                    raise SaturationTimeout(self._limits.timeout)
                rule_id = self._pending.popleft()
                if rule_id not in self.knowledge_base:
                    continue
                rule = self.knowledge_base.get(rule_id)
                for derived in itertools.chain(self._compositions(rule), self._transformations(rule)):
                    if self._add(derived, goal):
                        reached_goal = True
                        break
        except (LimitExceeded, SaturationTimeout) as error:
            self._report.warning(str(error))
            truncated_by = error

        stats = self.knowledge_base.stats
        stats.elapsed = time.monotonic() - start
        b_v = self.knowledge_base.rules()
        limits_hit = ["depth"] if self.knowledge_base.depth_exceeded else []
        if truncated_by is not None:
            limits_hit.append(getattr(truncated_by, "limit", "timeout"))
        result = SaturationResult(
            b_v=b_v,
            b=[rule for rule in b_v if is_final(rule)],
            knowledge_base=self.knowledge_base,
            stats=stats,
            initial_count=len(initial),
            truncated_by=truncated_by,
            reached_goal=reached_goal,
            limits_hit=limits_hit,
        )
        self._report.notify(
            f"|B_init|={len(initial)} |B_v|={len(result.b_v)} |B|={len(result.b)} "
            f"compositions={stats.compositions} transformations={stats.transformations} "
            f"subsumed={stats.subsumed} pruned={stats.pruned} elapsed={stats.elapsed:.2f}s"
        )
        self._report.set_status("Done")
        return result


def saturate(
    model: Model, limits: Optional[EngineLimits] = None, goal: Optional[Goal] = None, report: Optional[Report] = None
) -> SaturationResult:
    """Saturate a model (see Saturation.run)."""
    return Saturation(model, limits, report).run(goal)
