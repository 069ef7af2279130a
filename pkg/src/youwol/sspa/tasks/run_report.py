"""Reports of verification runs: text for the terminal, a structured form for files."""

# standard library
import json

from dataclasses import dataclass, field
from pathlib import Path

# typing
from typing import Any, Optional

# application engine
from youwol.sspa.oracle import OracleResult, Reachable, ReplayResult
from youwol.sspa.query import Verdict, VerdictStatus, render_steps, render_tree, verdict_as_dict

SCHEMA = 1


@dataclass
class QueryReport:
    verdict: Verdict
    oracle: Optional[OracleResult] = None
    replay: Optional[ReplayResult] = None
    trace_error: str = ""

    def as_dict(self) -> dict[str, Any]:
        result = verdict_as_dict(self.verdict)
        if self.trace_error:
            result["trace_error"] = self.trace_error
        if self.oracle is not None:
            oracle: dict[str, Any] = {"status": self.oracle.status}
            if isinstance(self.oracle, Reachable):
                oracle["trace"] = [f"{step.rule_name}: {step.instance}" for step in self.oracle.trace]
            result["oracle"] = oracle
        if self.replay is not None:
            result["replay"] = {"reached": self.replay.reached, "reason": self.replay.reason}
        return result


@dataclass
class RunReport:
    """Per query verdicts with the rule counts of the saturation they share.

    Timings are kept out of the structured form so that equal runs give equal files.
    """

    model_path: str
    queries: list[QueryReport] = field(default_factory=list)
    initial_rules: int = 0
    active_rules: int = 0
    final_rules: int = 0
    limits_hit: list[str] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self) -> None:
        if self.final_rules > self.active_rules:
            raise ValueError(f"|B|={self.final_rules} exceeds |B_v|={self.active_rules}")

    def exit_code(self) -> int:
        statuses = {query.verdict.status for query in self.queries}
        if VerdictStatus.ATTACK in statuses:
            return 1
        if VerdictStatus.UNKNOWN in statuses:
            return 2
        return 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "model": self.model_path,
            "rules": {"initial": self.initial_rules, "active": self.active_rules, "final": self.final_rules},
            "limits_hit": sorted(self.limits_hit),
            "stats": {key: value for key, value in sorted(self.stats.items()) if key != "elapsed"},
            "queries": [query.as_dict() for query in self.queries],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def write_json(self, path: Path) -> None:
        path.write_text(self.to_json() + "\n", encoding="utf-8")

    def render_text(self, with_trace: bool = False) -> str:
        lines = [
            f"model: {self.model_path}",
            f"rules: |B_init|={self.initial_rules} |B_v|={self.active_rules} |B|={self.final_rules}"
            f" time={self.elapsed:.2f}s",
        ]
        if self.limits_hit:
            lines.append(f"limits hit: {', '.join(sorted(self.limits_hit))}")
        for query in self.queries:
            verdict = query.verdict
            line = f"{verdict.event}(): {verdict.status.value}"
            if verdict.alternatives:
                line += f" ({verdict.alternatives} other witness rules)"
            lines.append(line)
            if query.oracle is not None:
                lines.append(f"  oracle: {query.oracle.status}")
            if query.replay is not None:
                lines.append(f"  witness replay: {'reached' if query.replay.reached else query.replay.reason}")
            if query.trace_error:
                lines.append(f"  no derivation tree: {query.trace_error}")
            if with_trace and verdict.tree is not None:
                lines.append("  derivation tree:")
                lines.extend(f"    {text}" for text in render_tree(verdict.tree).splitlines())
                lines.append("  trace:")
                lines.extend(f"    {text}" for text in render_steps(verdict.tree).splitlines())
        return "\n".join(lines)
