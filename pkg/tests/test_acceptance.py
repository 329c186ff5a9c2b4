"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.
"""

import random
import statistics
import time
from pathlib import Path

from vncourseqa.app import answer, run_suite_entries
from vncourseqa.intent import build_intent, decompose
from vncourseqa.kb import (
    CourseRecord,
    Graph,
    Triple,
    apply_inference,
    ingest_records,
)
from vncourseqa.lexicon import segment
from vncourseqa.parser import parse
from vncourseqa.query_builder import build_query, serialize
from vncourseqa.query_engine import ResultSet, brute_force_evaluate, evaluate

from helpers import random_graph, random_intent, strip_whitespace

GOLDEN = Path(__file__).parent / "golden" / "nested_and_query.txt"


def _criterion(name: str, ok: bool, detail: str = "") -> None:
    print(f"{'PASS' if ok else 'FAIL'} — {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


class TestAcceptance:
    def test_standard_suite_full_pass(self, demo_graph, lexicon, grammar, standard_suite):
        start = time.perf_counter()
        result = run_suite_entries(standard_suite, demo_graph, lexicon, grammar)
        elapsed = time.perf_counter() - start
        failing = [e.question for e in result.entries if not e.ok]
        _criterion(
            "standard suite: 57/57 questions pass in under 5 s",
            result.passed == result.total == 57 and elapsed < 5.0 and not failing,
            f"{result.passed}/{result.total} in {elapsed:.2f}s; failing: {failing[:3]}",
        )

    def test_rule_coverage_exactly_once(self, grammar, standard_suite, demo_graph, lexicon):
        expected_rules = [
            exp["value"]
            for entry in standard_suite
            for exp in entry.expectations
            if exp["kind"] == "rule"
        ]
        result = run_suite_entries(standard_suite, demo_graph, lexicon, grammar)
        parsed_rules = [e.rule_id for e in result.entries]
        ok = (
            sorted(expected_rules) == sorted(grammar.rule_ids())
            and parsed_rules == expected_rules
        )
        _criterion(
            "rule coverage: every rule id exercised exactly once",
            ok,
            f"{len(set(expected_rules))} distinct rules",
        )

    def test_negative_suite_all_rejected(self, demo_graph, lexicon, grammar, negative_suite):
        result = run_suite_entries(negative_suite, demo_graph, lexicon, grammar)
        _criterion(
            "negative suite: 20+ malformed questions all rejected",
            len(negative_suite) >= 20 and result.passed == result.total,
            f"{result.passed}/{result.total} of {len(negative_suite)}",
        )

    def test_nested_and_question_golden_and_semantics(self, lexicon, grammar):
        question = 'Ai đã có viết sách "Toan" và sách "Van"?'
        tree = parse(segment(question, lexicon), grammar)
        select = build_query(decompose(build_intent(tree)))
        text = serialize(select)
        golden = GOLDEN.read_text(encoding="utf-8")
        golden_ok = strip_whitespace(text) == strip_whitespace(golden)

        graph = Graph()
        an = graph.ensure_entity("Author", "An")
        binh = graph.ensure_entity("Author", "Binh")
        chau = graph.ensure_entity("Author", "Chau")
        toan = graph.ensure_entity("Course", "Toan")
        van = graph.ensure_entity("Course", "Van")
        su = graph.ensure_entity("Course", "Su")
        for author, course in [
            (an, toan),
            (an, van),
            (binh, toan),
            (binh, su),
            (chau, van),
            (chau, su),
        ]:
            graph.insert(Triple(author, "write", course))
        apply_inference(graph)

        result = evaluate(select, graph)
        oracle = brute_force_evaluate(select, graph)
        semantic_ok = result == oracle == ResultSet.from_rows(["An"])
        _criterion(
            "nested-query golden: two-level SELECT shape and both-titles semantics",
            golden_ok and semantic_ok,
            f"golden={golden_ok}, rows={result.rows}",
        )

    def test_oracle_equivalence_100_cases(self):
        start = time.perf_counter()
        mismatches = []
        for seed in range(100):
            rng = random.Random(seed)
            graph = random_graph(rng, max_courses=12)
            assert len(graph.triples) <= 200
            select = build_query(decompose(random_intent(rng)))
            if evaluate(select, graph) != brute_force_evaluate(select, graph):
                mismatches.append(seed)
        elapsed = time.perf_counter() - start
        _criterion(
            "oracle equivalence: 100 fuzzed queries match brute force in under 60 s",
            not mismatches and elapsed < 60.0,
            f"{len(mismatches)} mismatches in {elapsed:.1f}s",
        )

    def test_algebraic_laws_50_cases_each(self):
        def single_query(target, value):
            from vncourseqa.intent import QueryIntent, SlotValue

            return build_query(
                decompose(QueryIntent(target, {"title": SlotValue.single(value)}))
            )

        def multi_query(target, connective, values):
            from vncourseqa.intent import QueryIntent, SlotValue

            return build_query(
                decompose(QueryIntent(target, {"title": SlotValue.multi(connective, values)}))
            )

        targets = ["Author", "Publisher", "Subject", "PlaceOfPublication", "Price"]
        and_failures = or_failures = 0
        for seed in range(50):
            rng = random.Random(10_000 + seed)
            graph = random_graph(rng, max_courses=10)
            target = rng.choice(targets)
            values = rng.sample(["Toan", "Van", "Su", "Dia", "Hoa"], k=rng.randint(2, 3))
            branch_rows = [
                set(evaluate(single_query(target, value), graph).rows) for value in values
            ]
            chain = set(evaluate(multi_query(target, "and", values), graph).rows)
            if chain != set.intersection(*branch_rows):
                and_failures += 1
            union = set(evaluate(multi_query(target, "or", values), graph).rows)
            if union != set.union(*branch_rows):
                or_failures += 1
        _criterion(
            "algebraic laws: and-intersection and or-union hold on 50 cases each",
            and_failures == 0 and or_failures == 0,
            f"and failures={and_failures}, or failures={or_failures}",
        )

    def test_inference_closure_and_fixpoint(self, demo_records):
        graph = ingest_records(demo_records)
        inverse = {
            "write": "isWrittenBy",
            "isWrittenBy": "write",
            "publish": "isPublishedBy",
            "isPublishedBy": "publish",
        }
        missing = [
            triple
            for triple in graph.triples
            if triple.prop in inverse
            and Triple(triple.obj, inverse[triple.prop], triple.subject) not in graph.triples
        ]
        before = set(graph.triples)
        apply_inference(graph)
        fixpoint = graph.triples == before
        _criterion(
            "inference closure: inverses materialized and re-application is a fixpoint",
            not missing and fixpoint,
            f"missing={len(missing)}, fixpoint={fixpoint}",
        )

    def test_latency_median_under_100ms_on_1000_courses(self, lexicon, grammar):
        rng = random.Random(42)
        syllables = ["ba", "bo", "ca", "ke", "da", "di", "ga", "go", "hu", "mi"]
        titles = []
        for a in syllables:
            for b in syllables:
                for c in syllables:
                    titles.append(f"{a.capitalize()} {b} {c}")
        titles = titles[:1000]
        authors = [f"Tac gia {s}{i}" for i, s in enumerate(syllables * 30)]
        records = [
            CourseRecord(
                id=f"s{i}",
                name=title,
                authors=(rng.choice(authors), rng.choice(authors)),
                publisher=f"Nha {rng.choice(syllables)}",
                year=str(rng.randint(1990, 2020)),
                subject=f"Nganh {rng.choice(syllables)}",
                place=f"Tinh {rng.choice(syllables)}",
                price=f"{rng.randint(1, 99)} nghin dong",
            )
            for i, title in enumerate(titles)
        ]
        graph = ingest_records(records)
        assert graph.course_count() == 1000

        questions = [f"Ai đã viết sách {rng.choice(titles)}?" for _ in range(10)]
        questions += [
            f"Nhà xuất bản nào đã phát hành sách {rng.choice(titles)}?" for _ in range(5)
        ]
        questions += [
            "Có bao nhiêu sách trong thư viện?",
            f"Giá của sách {rng.choice(titles)} là bao nhiêu?",
            f"Sách {rng.choice(titles)} thuộc chủ đề gì?",
            f"Mua sách {rng.choice(titles)} giá bao nhiêu?",
            f"Chủ đề của sách {rng.choice(titles)} là gì?",
        ]
        timings = []
        for question in questions:
            report = answer(question, graph, lexicon, grammar)
            assert report.status in {"ok", "empty"}, (question, report.detail)
            timings.append(report.elapsed_ms)
        median = statistics.median(timings)
        _criterion(
            "latency: median end-to-end answer under 100 ms on 1000 courses",
            median < 100.0,
            f"median {median:.1f} ms over {len(timings)} questions, max {max(timings):.1f} ms",
        )
