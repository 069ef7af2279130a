"""Shared fixtures: a silent report, services wired to it, and the bundled models."""

# typing
from typing import Callable, Iterator

# third parties
import pytest

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds

# application services
from youwol.sspa.services import Report, context, silent_report

# application model
from youwol.sspa.parser import Model, parse_spec

# application tasks
from youwol.sspa.corpus import corpus_entry

TOY_MODEL = """
event start(*n, p);
state box(*id, v);

rule pk: k(x) => k(pk(x));
rule fetch: => box(|id|, |v|) -> k(|v|);
rule open: start([n], |v|) => <box(|id|, |v|), box(|id|, h(|v|, [n]))>;
rule seal: k(x), k(y) => k(seal(x, y));

access box(main[], |v|);

query leak: k(secret[]) => box(|id|, |v|) -> leak();
"""


@pytest.fixture
def report() -> Report:
    return silent_report("tests")


@pytest.fixture
def services(report: Report) -> Iterator[None]:
    """Builders return the silent report and default bounds, whatever the environment says."""
    context.report = report
    context.engine_limits = EngineLimits()
    context.oracle_bounds = OracleBounds()
    yield
    context.report = None
    context.engine_limits = None
    context.oracle_bounds = None


@pytest.fixture
def toy_model() -> Model:
    return parse_spec(TOY_MODEL)


@pytest.fixture
def corpus_model() -> Callable[[str], Model]:
    def load(name: str) -> Model:
        return corpus_entry(name).model()

    return load
