"""Modules for the tasks."""

# relative
from .builder import build_task_corpus, build_task_verify
from .corpus import CorpusOutcome, CorpusTask, query_mismatches, render_outcomes
from .run_report import SCHEMA, QueryReport, RunReport
from .verify import Goal, VerifyOptions, VerifyTask

__all__ = [
    "SCHEMA",
    "CorpusOutcome",
    "CorpusTask",
    "Goal",
    "QueryReport",
    "RunReport",
    "VerifyOptions",
    "VerifyTask",
    "build_task_corpus",
    "build_task_verify",
    "query_mismatches",
    "render_outcomes",
]
