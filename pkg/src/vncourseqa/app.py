"""End-to-end question answering and the batch suite runner."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import QaConfig
from .grammar import Grammar
from .intent import IntentError, build_intent, decompose
from .kb import Graph
from .lexicon import Lexicon, segment
from .parser import NoParse, parse, render_tree
from .query_builder import build_query, serialize
from .query_engine import evaluate

OK = "ok"
NO_PARSE = "no_parse"
EMPTY = "empty"


@dataclass(frozen=True)
class AnswerReport:
    """Everything one question produced, including failure diagnostics.

    ``elapsed_ms`` covers segmentation through evaluation only, so timings
    are comparable regardless of where the corpus came from.
    """

    question: str
    status: str
    rule_id: str | None = None
    parse_rendering: str | None = None
    intent_rendering: str | None = None
    generated_query: str | None = None
    answers: tuple[str, ...] | None = None
    count: int | None = None
    failure_position: int | None = None
    detail: str | None = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        out: dict = {"status": self.status, "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.rule_id is not None:
            out["rule_id"] = self.rule_id
        if self.parse_rendering is not None:
            out["parse_tree"] = self.parse_rendering
        if self.intent_rendering is not None:
            out["intent"] = self.intent_rendering
        if self.generated_query is not None:
            out["generated_query"] = self.generated_query
        if self.count is not None:
            out["answers"] = {"count": self.count}
        elif self.answers is not None:
            out["answers"] = list(self.answers)
        if self.failure_position is not None:
            out["failure_position"] = self.failure_position
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def answer(
    question: str,
    graph: Graph,
    lexicon: Lexicon,
    grammar: Grammar,
    config: QaConfig | None = None,
    rule_targets: dict[str, str] | None = None,
) -> AnswerReport:
    """Run the full pipeline; failures become statuses, never exceptions."""
    config = config or QaConfig()
    start = time.perf_counter()
    try:
        tokens = segment(question, lexicon)
        tree = parse(tokens, grammar)
        intent = build_intent(tree, rule_targets)
        decomposed = decompose(intent)
        query = build_query(decomposed, config)
        result = evaluate(query, graph)
    except NoParse as exc:
        elapsed = (time.perf_counter() - start) * 1000.0
        return AnswerReport(
            question=question,
            status=NO_PARSE,
            failure_position=exc.position,
            detail=str(exc),
            elapsed_ms=elapsed,
        )
    except IntentError as exc:
        # semantically rejected after a successful parse; reported like a
        # non-analyzable question, with the offending token position
        elapsed = (time.perf_counter() - start) * 1000.0
        return AnswerReport(
            question=question,
            status=NO_PARSE,
            failure_position=exc.position if exc.position is not None else 0,
            detail=str(exc),
            elapsed_ms=elapsed,
        )
    elapsed = (time.perf_counter() - start) * 1000.0

    if result.kind == "count":
        answers: tuple[str, ...] | None = None
        count: int | None = result.count
        status = OK
    else:
        answers = result.rows
        count = None
        status = OK if answers else EMPTY
    return AnswerReport(
        question=question,
        status=status,
        rule_id=tree.rule_id,
        parse_rendering=render_tree(tree),
        intent_rendering=decomposed.render(),
        generated_query=serialize(query),
        answers=answers if count is None else None,
        count=count,
        elapsed_ms=elapsed,
    )


# -- suite runner --------------------------------------------------------------


class SuiteFormatError(ValueError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"suite entry {index}: {message}")


_EXPECT_KINDS = {"rule", "answers", "nonempty", "no_parse", "count"}


@dataclass(frozen=True)
class SuiteEntry:
    question: str
    expectations: tuple[dict, ...]


@dataclass(frozen=True)
class SuiteEntryResult:
    question: str
    ok: bool
    reason: str
    rule_id: str | None
    elapsed_ms: float


@dataclass
class SuiteResult:
    entries: list[SuiteEntryResult] = field(default_factory=list)
    total_elapsed_ms: float = 0.0

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e.ok)

    @property
    def average_ms(self) -> float:
        return self.total_elapsed_ms / self.total if self.total else 0.0

    def summary(self) -> str:
        pct = 100.0 * self.passed / self.total if self.total else 0.0
        return (
            f"passed {self.passed}/{self.total} ({pct:.2f}%), "
            f"total {self.total_elapsed_ms:.1f} ms, "
            f"average {self.average_ms:.1f} ms/question"
        )


def parse_suite(text: str) -> list[SuiteEntry]:
    """Parse a JSON Lines suite: {"question": ..., "expect": {...} | [...]}"""
    entries: list[SuiteEntry] = []
    for index, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            data = json.loads(line)
        except ValueError as exc:
            raise SuiteFormatError(index, f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict) or "question" not in data or "expect" not in data:
            raise SuiteFormatError(index, "entry needs 'question' and 'expect'")
        expect = data["expect"]
        expectations = expect if isinstance(expect, list) else [expect]
        for exp in expectations:
            if not isinstance(exp, dict) or exp.get("kind") not in _EXPECT_KINDS:
                raise SuiteFormatError(index, f"unknown expectation {exp!r}")
        entries.append(SuiteEntry(str(data["question"]), tuple(expectations)))
    return entries


def _check_expectation(exp: dict, report: AnswerReport) -> str | None:
    kind = exp["kind"]
    if kind == "no_parse":
        if report.status != NO_PARSE:
            return f"expected no_parse, got {report.status}"
        return None
    if report.status == NO_PARSE:
        return f"no parse at token {report.failure_position}"
    if kind == "rule":
        if report.rule_id != exp.get("value"):
            return f"expected rule {exp.get('value')}, got {report.rule_id}"
    elif kind == "answers":
        expected = {str(v) for v in exp.get("value", [])}
        got = set(report.answers or ())
        if report.count is not None:
            return "expected answer rows, got a count"
        if got != expected:
            return f"expected answers {sorted(expected)}, got {sorted(got)}"
    elif kind == "nonempty":
        if report.count is not None:
            if report.count <= 0:
                return "expected a positive count"
        elif not report.answers:
            return "expected non-empty answers"
    elif kind == "count":
        if report.count != exp.get("value"):
            return f"expected count {exp.get('value')}, got {report.count}"
    return None


def run_suite(
    path: str | Path,
    graph: Graph,
    lexicon: Lexicon,
    grammar: Grammar,
    config: QaConfig | None = None,
    rule_targets: dict[str, str] | None = None,
) -> SuiteResult:
    """Answer every suite question and compare against its expectations."""
    entries = parse_suite(Path(path).read_text(encoding="utf-8"))
    return run_suite_entries(entries, graph, lexicon, grammar, config, rule_targets)


def run_suite_entries(
    entries: list[SuiteEntry],
    graph: Graph,
    lexicon: Lexicon,
    grammar: Grammar,
    config: QaConfig | None = None,
    rule_targets: dict[str, str] | None = None,
) -> SuiteResult:
    result = SuiteResult()
    for entry in entries:
        report = answer(entry.question, graph, lexicon, grammar, config, rule_targets)
        failures = [
            failure
            for exp in entry.expectations
            if (failure := _check_expectation(exp, report)) is not None
        ]
        result.entries.append(
            SuiteEntryResult(
                question=entry.question,
                ok=not failures,
                reason="; ".join(failures) if failures else "ok",
                rule_id=report.rule_id,
                elapsed_ms=report.elapsed_ms,
            )
        )
        result.total_elapsed_ms += report.elapsed_ms
    return result
