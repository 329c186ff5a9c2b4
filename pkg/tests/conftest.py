import pytest

from vncourseqa.app import parse_suite
from vncourseqa.kb import Graph, Triple, apply_inference, ingest_records, parse_corpus
from vncourseqa.resources import (
    default_grammar,
    default_lexicon,
    default_rule_targets,
    demo_corpus_text,
    negative_suite_text,
    standard_suite_text,
)


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def grammar():
    return default_grammar()


@pytest.fixture(scope="session")
def rule_targets():
    return default_rule_targets()


@pytest.fixture(scope="session")
def demo_records():
    records, report = parse_corpus(demo_corpus_text())
    assert not report.errors
    return records


@pytest.fixture(scope="session")
def demo_graph(demo_records):
    return ingest_records(demo_records)


@pytest.fixture(scope="session")
def standard_suite():
    return parse_suite(standard_suite_text())


@pytest.fixture(scope="session")
def negative_suite():
    return parse_suite(negative_suite_text())


@pytest.fixture()
def two_writer_graph():
    """Two authors, two courses: Nguyen wrote both, Tran wrote only Toan."""
    graph = Graph()
    nguyen = graph.ensure_entity("Author", "Nguyen")
    tran = graph.ensure_entity("Author", "Tran")
    toan = graph.ensure_entity("Course", "Toan")
    van = graph.ensure_entity("Course", "Van")
    graph.insert(Triple(nguyen, "write", toan))
    graph.insert(Triple(nguyen, "write", van))
    graph.insert(Triple(tran, "write", toan))
    return apply_inference(graph)
