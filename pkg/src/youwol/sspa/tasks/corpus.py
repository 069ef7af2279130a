"""The corpus task: verify every bundled model and compare with the expected verdicts."""

# standard library
from dataclasses import dataclass, field

# typing
from typing import Any, Optional

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds

# application services
from youwol.sspa.services import Report

# application engine
from youwol.sspa.oracle import Reachable, Unreachable
from youwol.sspa.query import VerdictStatus

# application tasks
from youwol.sspa.corpus import CorpusEntry, corpus_manifest

# relative
from .run_report import QueryReport, RunReport
from .verify import VerifyOptions, VerifyTask


@dataclass
class CorpusOutcome:
    entry: CorpusEntry
    run: Optional[RunReport] = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.run is not None and not self.mismatches

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.entry.name,
            "reconstruction": self.entry.reconstruction,
            "passed": self.passed,
            "mismatches": list(self.mismatches),
            "run": self.run.as_dict() if self.run is not None else None,
        }


def query_mismatches(entry: CorpusEntry, query: QueryReport) -> list[str]:
    """Differences between a query report and what the corpus expects of it.

    Args:
        entry (CorpusEntry): the corpus entry
        query (QueryReport): the report of one of its queries

    Returns:
        list[str]: one line per difference, empty when the query behaves as expected
    """
    verdict = query.verdict
    found: list[str] = []
    expected = entry.expected.get(verdict.event)
    if expected is not None and verdict.status.value != expected:
        found.append(f"{verdict.event}: expected {expected}, got {verdict.status.value}")
    if verdict.status == VerdictStatus.ATTACK and entry.tree_labels:
        if verdict.tree is None:
            found.append(f"{verdict.event}: no derivation tree ({query.trace_error or 'not built'})")
        else:
            names = {node.rule_name for node in verdict.tree.nodes()}
            missing = [label for label in entry.tree_labels if label not in names]
            if missing:
                found.append(f"{verdict.event}: derivation tree lacks {', '.join(missing)}")
    if query.replay is not None and not query.replay.reached:
        found.append(f"{verdict.event}: witness replay failed ({query.replay.reason})")
    if isinstance(query.oracle, Reachable) and verdict.status != VerdictStatus.ATTACK:
        found.append(f"{verdict.event}: the oracle reaches it, verdict {verdict.status.value}")
    if entry.exhaustive and isinstance(query.oracle, Unreachable) and verdict.status == VerdictStatus.ATTACK:
        found.append(f"{verdict.event}: Attack, but the oracle explored everything without reaching it")
    if entry.exhaustive and query.oracle is not None and not isinstance(query.oracle, (Reachable, Unreachable)):
        found.append(f"{verdict.event}: the oracle did not finish within the bounds of an exhaustive model")
    return found


class CorpusTask:
    """Run the regression corpus."""

    def __init__(
        self,
        report: Report,
        limits: EngineLimits,
        bounds: OracleBounds,
        names: tuple[str, ...] = (),
        oracle: bool = False,
    ):
        """Simple constructor.

        Args:
            report (Report): the report
            limits (EngineLimits): the saturation limits, shared by every model
            bounds (OracleBounds): the oracle bounds of the entries that do not set their own
            names (tuple[str, ...]): the models to run, all of them when empty
            oracle (bool): cross-check the verdicts with the ground oracle
        """
        self._report = report.get_sub_report("Corpus", init_status="InitializingTask")
        self._limits = limits
        self._bounds = bounds
        self._names = names
        self._oracle = oracle

    def entries(self) -> list[CorpusEntry]:
        entries = corpus_manifest()
        unknown = set(self._names) - {entry.name for entry in entries}
        if unknown:
            raise KeyError(f"No corpus model named {', '.join(sorted(unknown))}")
        return [entry for entry in entries if not self._names or entry.name in self._names]

    def run_entry(self, entry: CorpusEntry) -> CorpusOutcome:
        options = VerifyOptions(queries=entry.queries, trace=bool(entry.tree_labels), oracle=self._oracle)
        task = VerifyTask(self._report, self._limits, entry.bounds or self._bounds, options)
        outcome = CorpusOutcome(entry)
        outcome.run = task.run_model(entry.model(), entry.file)
        for query in outcome.run.queries:
            outcome.mismatches.extend(query_mismatches(entry, query))
        for mismatch in outcome.mismatches:
            self._report.warning(f"{entry.name}: {mismatch}")
        return outcome

    def run(self) -> list[CorpusOutcome]:
        """Verify the selected corpus models in manifest order.

        Returns:
            list[CorpusOutcome]: one outcome per model
        """
        self._report.set_status("Running")
        outcomes = [self.run_entry(entry) for entry in self.entries()]
        failed = [outcome.entry.name for outcome in outcomes if not outcome.passed]
        if failed:
            self._report.warning(f"{len(failed)} corpus models differ from the manifest: {', '.join(failed)}")
        else:
            self._report.notify(f"{len(outcomes)} corpus models as expected")
        self._report.set_status("Done")
        return outcomes


def render_outcomes(outcomes: list[CorpusOutcome]) -> str:
    lines = []
    for outcome in outcomes:
        mark = "ok" if outcome.passed else "FAIL"
        suffix = " (reconstruction)" if outcome.entry.reconstruction else ""
        lines.append(f"{mark:4} {outcome.entry.name}{suffix}")
        if outcome.run is not None:
            for query in outcome.run.queries:
                lines.append(f"     {query.verdict.event}(): {query.verdict.status.value}")
        lines.extend(f"     ! {mismatch}" for mismatch in outcome.mismatches)
    return "\n".join(lines)
