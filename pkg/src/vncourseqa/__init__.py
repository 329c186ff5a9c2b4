"""Vietnamese question answering over a course-metadata knowledge base.

Pipeline: normalize and segment the question, parse it against the fixed
question grammar, lower the parse tree to a query intent, compile the intent
to a SPARQL-subset query, and evaluate it on the in-memory triple store.
"""

from .app import AnswerReport, SuiteResult, answer, run_suite
from .config import QaConfig
from .grammar import Grammar, load_grammar, load_grammar_file
from .intent import DecomposedIntent, QueryIntent, SlotValue, build_intent, decompose
from .kb import (
    CourseRecord,
    Graph,
    LoadReport,
    Triple,
    apply_inference,
    check_consistency,
    load_corpus,
    record_to_triples,
)
from .lexicon import Lexicon, Token, load_lexicon, load_lexicon_file, normalize, segment
from .parser import NoParse, ParseTree, parse, render_tree
from .query_builder import Select, build_query, escape_literal, read_query, serialize
from .query_engine import ResultSet, brute_force_evaluate, evaluate
from .resources import default_grammar, default_lexicon, default_rule_targets

__version__ = "0.1.0"

__all__ = [
    "AnswerReport",
    "CourseRecord",
    "DecomposedIntent",
    "Grammar",
    "Graph",
    "Lexicon",
    "LoadReport",
    "NoParse",
    "ParseTree",
    "QaConfig",
    "QueryIntent",
    "ResultSet",
    "Select",
    "SlotValue",
    "SuiteResult",
    "Token",
    "Triple",
    "answer",
    "apply_inference",
    "brute_force_evaluate",
    "build_intent",
    "build_query",
    "check_consistency",
    "decompose",
    "default_grammar",
    "default_lexicon",
    "default_rule_targets",
    "escape_literal",
    "evaluate",
    "load_corpus",
    "load_grammar",
    "load_grammar_file",
    "load_lexicon",
    "load_lexicon_file",
    "normalize",
    "parse",
    "read_query",
    "record_to_triples",
    "render_tree",
    "run_suite",
    "segment",
    "serialize",
]
