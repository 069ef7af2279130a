"""The knowledge base: a subsumption-minimal rule set, with every rule ever inserted kept for trace reconstruction."""

# standard library
from collections import defaultdict
from dataclasses import asdict, dataclass, replace

# typing
from typing import Optional

# application configuration
from youwol.sspa.configuration import EngineLimits

# application services
from youwol.sspa.services import Report, silent_report

# application model
from youwol.sspa.model import Knowledge, Rule, fact_as_term, implies

# relative
from .errors import LimitExceeded
from .progress import ProgressAnalysis


@dataclass
class SaturationStats:
    compositions: int = 0
    transformations: int = 0
    inserted: int = 0
    subsumed: int = 0
    evicted: int = 0
    tautologies: int = 0
    pruned: int = 0
    invalid: int = 0
    too_deep: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def conclusion_index(rule: Rule) -> tuple:
    """Rules that may imply each other share this key."""
    if rule.is_transferring:
        return ("conversions", tuple(sorted(conversion.post.name for conversion in rule.conversions)))
    return ("fact", fact_as_term(rule.conclusion_fact).symbol)


class KnowledgeBase:
    """Rules kept minimal under implication.

    Inserted rules get consecutive ids. Evicted rules stay in the archive, so that provenance can always be followed.
    """

    def __init__(
        self,
        limits: Optional[EngineLimits] = None,
        progress: Optional[ProgressAnalysis] = None,
        report: Optional[Report] = None,
    ):
        """Simple constructor.

        Args:
            limits (Optional[EngineLimits]): the limits, defaults when None
            progress (Optional[ProgressAnalysis]): the analysis used to prune infeasible rules, no pruning when None
            report (Optional[Report]): the report
        """
        self._limits = limits if limits is not None else EngineLimits()
        self._progress = progress
        self._report = (report if report is not None else silent_report()).get_sub_report(
            "KnowledgeBase", init_status="ComponentInitialized"
        )
        self._active: dict[int, Rule] = {}
        self._by_conclusion: dict[tuple, set[int]] = defaultdict(set)
        self._archive: dict[int, Rule] = {}
        self._next_id = 0
        self.stats = SaturationStats()
        self.depth_exceeded = False

    def __len__(self) -> int:
        return len(self._active)

    def __contains__(self, rule_id: int) -> bool:
        return rule_id in self._active

    def rules(self) -> list[Rule]:
        """Active rules, by id."""
        return [self._active[rule_id] for rule_id in sorted(self._active)]

    def get(self, rule_id: int) -> Rule:
        """Any rule ever inserted, active or evicted."""
        return self._archive[rule_id]

    def archive(self) -> list[Rule]:
        return [self._archive[rule_id] for rule_id in sorted(self._archive)]

    def _is_tautology(self, rule: Rule) -> bool:
        return isinstance(rule.conclusion, Knowledge) and rule.conclusion in rule.premises

    def add_rule(self, rule: Rule) -> Optional[Rule]:
        """Insert a validated rule unless an active rule implies it; evict the active rules it implies.

        Args:
            rule (Rule): the rule

        Returns:
            Optional[Rule]: the inserted rule, with its id, or None if it was not inserted

        Raises:
            LimitExceeded: if the knowledge base grows beyond max_rules
        """
        if self._is_tautology(rule):
            self.stats.tautologies += 1
            return None
        if rule.depth() > self._limits.max_term_depth:
            self.stats.too_deep += 1
            if not self.depth_exceeded:
                self._report.warning(f"term depth above {self._limits.max_term_depth}, rules dropped")
            self.depth_exceeded = True
            return None
        if self._progress is not None and self._progress.infeasible(rule):
            self.stats.pruned += 1
            return None

        closure_aware = self._limits.closure_aware_implies
        candidates = sorted(self._by_conclusion[conclusion_index(rule)])
        for rule_id in candidates:
            if implies(self._active[rule_id], rule, closure_aware):
                self.stats.subsumed += 1
                return None
        for rule_id in candidates:
            if implies(rule, self._active[rule_id], closure_aware):
                self._evict(rule_id)

        inserted = replace(rule, rule_id=self._next_id)
        self._next_id += 1
        self._active[inserted.rule_id] = inserted  # type: ignore[index]
        self._by_conclusion[conclusion_index(inserted)].add(inserted.rule_id)  # type: ignore[arg-type]
        self._archive[inserted.rule_id] = inserted  # type: ignore[index]
        self.stats.inserted += 1
        self._report.debug(f"#{inserted.rule_id} {inserted.provenance.describe()} | {inserted}")
        if len(self._active) > self._limits.max_rules:
            raise LimitExceeded("rules", self._limits.max_rules)
        return inserted

    def _evict(self, rule_id: int) -> None:
        rule = self._active.pop(rule_id)
        self._by_conclusion[conclusion_index(rule)].discard(rule_id)
        self.stats.evicted += 1
