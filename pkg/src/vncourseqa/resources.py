"""Access to the packaged data files (lexicon, grammar, targets, corpora)."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .grammar import Grammar, load_grammar
from .intent import parse_rule_targets
from .lexicon import Lexicon, load_lexicon


def _read(name: str) -> str:
    return (resources.files("vncourseqa") / "data" / name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    return load_lexicon(_read("lexicon.tsv"))


@lru_cache(maxsize=None)
def default_grammar() -> Grammar:
    return load_grammar(_read("grammar.ebnf"))


@lru_cache(maxsize=None)
def default_rule_targets() -> dict[str, str]:
    return parse_rule_targets(_read("rule_targets.tsv"))


def demo_corpus_text() -> str:
    return _read("demo_corpus.jsonl")


def standard_suite_text() -> str:
    return _read("standard_suite.jsonl")


def negative_suite_text() -> str:
    return _read("negative_suite.jsonl")
