# standard library
import json

from pathlib import Path

# third parties
import pytest

from click.testing import CliRunner

# application terms
from youwol.sspa.terms import EMPTY

# application model
from youwol.sspa.model import ModelError
from youwol.sspa.parser import Model, parse_rule

# application engine
from youwol.sspa.query import Verdict, VerdictStatus, Witness

# application tasks
from youwol.sspa.corpus import corpus_entry
from youwol.sspa import entry_point
from youwol.sspa.entry_point import sspa
from youwol.sspa.tasks import QueryReport, RunReport, VerifyOptions, build_task_verify


def verdict(status: VerdictStatus, toy_model: Model) -> Verdict:
    if status != VerdictStatus.ATTACK:
        return Verdict(status, "leak")
    rule = parse_rule("query leak: => box(main[], a[]) -> leak();", toy_model)
    return Verdict(status, "leak", witness=Witness(rule, EMPTY))


@pytest.fixture
def counter_file(tmp_path: Path) -> Path:
    path = tmp_path / "counter.sspa"
    path.write_text(corpus_entry("toy_counter").text(), encoding="utf-8")
    return path


class TestRunReport:
    @pytest.mark.parametrize(
        "statuses, code",
        [
            ([VerdictStatus.SECURE], 0),
            ([], 0),
            ([VerdictStatus.SECURE, VerdictStatus.UNKNOWN], 2),
            ([VerdictStatus.UNKNOWN, VerdictStatus.ATTACK], 1),
        ],
    )
    def test_exit_code(self, statuses, code, toy_model: Model):
        report = RunReport("m.sspa", [QueryReport(verdict(status, toy_model)) for status in statuses])
        assert report.exit_code() == code

    def test_rule_counts(self):
        with pytest.raises(ValueError):
            RunReport("m.sspa", active_rules=1, final_rules=2)

    def test_json_has_no_timings(self, toy_model: Model):
        report = RunReport(
            "m.sspa",
            [QueryReport(verdict(VerdictStatus.ATTACK, toy_model))],
            stats={"inserted": 3, "elapsed": 1.5},
            elapsed=1.5,
        )
        structured = json.loads(report.to_json())
        assert structured["schema"] == 1
        assert structured["stats"] == {"inserted": 3}
        assert structured["queries"][0]["status"] == "Attack"
        assert "1.5" not in report.to_json()

    def test_text(self, toy_model: Model):
        report = RunReport("m.sspa", [QueryReport(verdict(VerdictStatus.SECURE, toy_model))], limits_hit=["depth"])
        lines = report.render_text().splitlines()
        assert lines[0] == "model: m.sspa"
        assert "limits hit: depth" in lines
        assert "leak(): Secure" in lines


class TestVerifyTask:
    def test_run(self, services, counter_file: Path):
        report = build_task_verify(VerifyOptions()).run(counter_file)
        statuses = {query.verdict.event: query.verdict.status for query in report.queries}
        assert statuses == {"reached_two": VerdictStatus.ATTACK, "reached_three": VerdictStatus.SECURE}
        assert report.initial_rules == 6
        assert report.final_rules <= report.active_rules

    def test_selected_queries(self, services, counter_file: Path):
        report = build_task_verify(VerifyOptions(queries=("reached_three",))).run(counter_file)
        assert [query.verdict.event for query in report.queries] == ["reached_three"]

    def test_unknown_query(self, services, counter_file: Path):
        with pytest.raises(ModelError):
            build_task_verify(VerifyOptions(queries=("nope",))).run(counter_file)

    def test_trace_and_oracle(self, services, counter_file: Path):
        options = VerifyOptions(queries=("reached_two",), trace=True, oracle=True, jobs=2)
        (query,) = build_task_verify(options).run(counter_file).queries
        assert query.verdict.tree is not None
        assert query.oracle is not None and query.oracle.status == "Reachable"
        assert query.replay is not None and query.replay.reached

    def test_dump(self, services, counter_file: Path, tmp_path: Path):
        dump = tmp_path / "kb.txt"
        build_task_verify(VerifyOptions(dump_kb=dump)).run(counter_file)
        assert dump.read_text(encoding="utf-8").startswith("#0 base:inc_zero | rule inc_zero:")


class TestCommandLine:
    def test_verify(self, services, counter_file: Path):
        result = CliRunner().invoke(sspa, ["verify", str(counter_file)])
        assert result.exit_code == 1
        assert "reached_two(): Attack" in result.output
        assert "reached_three(): Secure" in result.output

    def test_secure(self, services, counter_file: Path):
        result = CliRunner().invoke(sspa, ["verify", str(counter_file), "--query", "reached_three"])
        assert result.exit_code == 0

    def test_truncated(self, services, counter_file: Path):
        result = CliRunner().invoke(sspa, ["verify", str(counter_file), "--max-rules", "1"])
        assert result.exit_code == 2
        assert "limits hit: rules" in result.output

    def test_trace(self, services, counter_file: Path):
        result = CliRunner().invoke(sspa, ["verify", str(counter_file), "--query", "reached_two", "--trace"])
        assert "derivation tree:" in result.output
        assert "inc_zero" in result.output

    def test_json(self, services, counter_file: Path, tmp_path: Path):
        path = tmp_path / "report.json"
        CliRunner().invoke(sspa, ["verify", str(counter_file), "--json", str(path), "--oracle"])
        structured = json.loads(path.read_text(encoding="utf-8"))
        assert [query["event"] for query in structured["queries"]] == ["reached_two", "reached_three"]
        assert structured["queries"][0]["oracle"]["status"] == "Reachable"
        assert structured["queries"][1]["oracle"]["status"] == "Unreachable"

    @pytest.mark.parametrize(
        "content",
        ["state counter(*c, v);\nrule r: => => k(x);\n", "rule r: => counter(|c|) -> k(|c|);\n"],
        ids=["syntax", "undeclared"],
    )
    def test_bad_model(self, services, tmp_path: Path, content: str):
        path = tmp_path / "bad.sspa"
        path.write_text(content, encoding="utf-8")
        assert CliRunner().invoke(sspa, ["verify", str(path)]).exit_code == 3

    def test_missing_model(self, services, tmp_path: Path):
        assert CliRunner().invoke(sspa, ["verify", str(tmp_path / "missing.sspa")]).exit_code == 3

    def test_unknown_query(self, services, counter_file: Path):
        assert CliRunner().invoke(sspa, ["verify", str(counter_file), "--query", "nope"]).exit_code == 3

    def test_corpus(self, services):
        result = CliRunner().invoke(sspa, ["corpus", "toy_counter", "toy_toggle", "--oracle"])
        assert result.exit_code == 0
        assert "ok   toy_counter" in result.output
        assert "ok   toy_toggle" in result.output

    def test_unknown_corpus_model(self, services):
        assert CliRunner().invoke(sspa, ["corpus", "nope"]).exit_code == 3

    @pytest.mark.parametrize(
        "args",
        [["verify"], ["verify", "model.sspa", "--bogus"], ["verify", "model.sspa", "--jobs", "many"], ["nope"]],
        ids=["missing-argument", "unknown-option", "bad-value", "unknown-command"],
    )
    def test_usage_errors(self, services, args: list[str]):
        """Usage errors are bad input, never mistaken for Unknown."""
        assert CliRunner().invoke(sspa, args).exit_code == 3

    def test_engine_failure(self, services, counter_file: Path, monkeypatch: pytest.MonkeyPatch):
        """A failure inside the engine is neither a verdict nor bad input."""

        class Failing:
            def run(self, _model: Path):
                raise KeyError("broken rule")

        monkeypatch.setattr(entry_point, "build_task_verify", lambda *args, **kwargs: Failing())
        result = CliRunner().invoke(sspa, ["verify", str(counter_file)])
        assert result.exit_code == 4
        assert "internal error" in result.output

