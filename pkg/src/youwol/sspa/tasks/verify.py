"""The verify task: saturate a model once, then answer each of its queries."""

# standard library
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

# typing
from typing import Optional

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds

# application services
from youwol.sspa.services import Report

# application model
from youwol.sspa.model import AccessPattern, Event, ModelError, Rule
from youwol.sspa.parser import Model, parse_spec

# application engine
from youwol.sspa.engine import SaturationResult, dump_rules, saturate
from youwol.sspa.oracle import GroundConfig, ground_reachable, replay_witness
from youwol.sspa.query import (
    MalformedProvenance,
    Verdict,
    VerdictStatus,
    check_query,
    reconstruct_trace,
    validate_tree,
    witness_of,
)

# relative
from .run_report import QueryReport, RunReport


@dataclass(frozen=True, kw_only=True)
class VerifyOptions:
    queries: tuple[str, ...] = ()
    trace: bool = False
    oracle: bool = False
    dump_kb: Optional[Path] = None
    jobs: int = 1


class Goal:
    """Stop the saturation once every selected query has a witness."""

    def __init__(self, events: list[str], patterns: list[AccessPattern]):
        self._missing = set(events)
        self._patterns = patterns

    def __call__(self, rule: Rule) -> bool:
        conclusion = rule.conclusion
        if isinstance(conclusion, Event) and conclusion.name in self._missing:
            if witness_of(rule, self._patterns) is not None:
                self._missing.discard(conclusion.name)
        return not self._missing


class VerifyTask:
    """Parse, saturate, check the queries, and optionally rebuild witnesses and cross-check them."""

    def __init__(self, report: Report, limits: EngineLimits, bounds: OracleBounds, options: VerifyOptions):
        """Simple constructor.

        Args:
            report (Report): the report
            limits (EngineLimits): the saturation limits
            bounds (OracleBounds): the ground oracle bounds
            options (VerifyOptions): what to check and what to produce
        """
        self._report = report.get_sub_report("Verify", init_status="InitializingTask")
        self._limits = limits
        self._bounds = bounds
        self._options = options

    def load(self, path: Path) -> Model:
        """Parse a model file, reporting its warnings.

        Raises:
            ParseError: if the file is not a valid model
            ModelError: if the model is inconsistent
        """
        model = parse_spec(path.read_text(encoding="utf-8"))
        for warning in model.warnings:
            self._report.warning(warning)
        return model

    def _selected(self, model: Model) -> list[str]:
        unknown = [name for name in self._options.queries if model.query(name) is None]
        if unknown:
            raise ModelError(f"unknown queries {', '.join(unknown)}; the model declares {model.query_names()}")
        return list(self._options.queries) if self._options.queries else model.query_names()

    def _answer(self, model: Model, result: SaturationResult, event: str) -> QueryReport:
        verdict = check_query(result.b, event, model.access, truncated=result.truncated, stats=result.stats.as_dict())
        query = QueryReport(verdict)
        if verdict.status == VerdictStatus.ATTACK and (self._options.trace or self._options.oracle):
            self._attach_tree(result, verdict, query)
        if self._options.oracle:
            config = GroundConfig.from_bounds(model, self._bounds)
            query.oracle = ground_reachable(model, event, config, self._report)
            if verdict.tree is not None:
                query.replay = replay_witness(model, verdict.tree, config)
        return query

    def _attach_tree(self, result: SaturationResult, verdict: Verdict, query: QueryReport) -> None:
        assert verdict.witness is not None
        try:
            verdict.tree = validate_tree(reconstruct_trace(verdict.witness, result.knowledge_base))
        except MalformedProvenance as error:
            self._report.warning(str(error))
            query.trace_error = error.reason

    def run(self, path: Path) -> RunReport:
        """Verify the selected queries of a model file.

        Args:
            path (Path): the model file

        Returns:
            RunReport: the verdicts and the saturation figures
        """
        return self.run_model(self.load(path), str(path))

    def run_model(self, model: Model, model_path: str) -> RunReport:
        """Verify the selected queries of a parsed model.

        Args:
            model (Model): the model
            model_path (str): where the model comes from, for the report

        Returns:
            RunReport: the verdicts and the saturation figures
        """
        self._report.set_status("Running")
        events = self._selected(model)
        result = saturate(model, self._limits, Goal(events, model.access), self._report)
        if self._options.dump_kb is not None:
            dump_rules(result.knowledge_base.archive(), self._options.dump_kb)

        with ThreadPoolExecutor(max_workers=max(1, self._options.jobs)) as pool:
            queries = list(pool.map(lambda event: self._answer(model, result, event), events))

        report = RunReport(
            model_path=model_path,
            queries=queries,
            initial_rules=result.initial_count,
            active_rules=len(result.b_v),
            final_rules=len(result.b),
            limits_hit=list(result.limits_hit),
            stats=result.stats.as_dict(),
            elapsed=result.stats.elapsed,
        )
        for query in queries:
            self._report.notify(f"{query.verdict.event}: {query.verdict.status.value}")
        self._report.set_status("Done")
        return report
