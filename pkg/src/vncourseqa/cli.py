"""Command-line interface: load, ask, repl, suite, serve."""

from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

from .app import AnswerReport, answer, run_suite
from .config import QaConfig
from .kb import load_corpus
from .resources import default_grammar, default_lexicon, demo_corpus_text


def _corpus_path(arg: str | None) -> Path:
    """Resolve the corpus argument; the packaged demo corpus is the default."""
    if arg is not None:
        return Path(arg)
    tmp = Path(tempfile.gettempdir()) / "vncourseqa_demo_corpus.jsonl"
    tmp.write_text(demo_corpus_text(), encoding="utf-8")
    return tmp


def _print_report(report: AnswerReport, explain: bool = False) -> None:
    print(f"status: {report.status}")
    if report.rule_id:
        print(f"rule: {report.rule_id}")
    if report.status == "no_parse":
        print(f"failure position: token {report.failure_position}")
        if report.detail:
            print(f"detail: {report.detail}")
    if explain and report.parse_rendering:
        print("parse tree:")
        print(report.parse_rendering)
    if explain and report.intent_rendering:
        print(f"intent: {report.intent_rendering}")
    if report.generated_query:
        print("query:")
        print(report.generated_query)
    if report.count is not None:
        print(f"answers: count = {report.count}")
    elif report.answers is not None:
        print(f"answers: {list(report.answers)}")
    print(f"time: {report.elapsed_ms:.1f} ms")


def _cmd_load(args: argparse.Namespace) -> int:
    graph, report = load_corpus(_corpus_path(args.corpus))
    print(f"records loaded: {report.loaded}")
    print(f"entities: {len(graph.entity_class)}  triples: {len(graph.triples)}")
    for index, message in report.errors:
        print(f"error at record {index}: {message}")
    for index, message in report.warnings:
        print(f"warning at record {index}: {message}")
    for violation in report.violations:
        print(f"violation: {violation.kind} on {violation.subject}: {violation.message}")
    print("consistent" if not report.violations else f"{len(report.violations)} violations")
    return 1 if report.errors or report.violations else 0


def _config(args: argparse.Namespace) -> QaConfig:
    return QaConfig(substring_match=getattr(args, "substring_match", False))


def _cmd_ask(args: argparse.Namespace) -> int:
    graph, _ = load_corpus(_corpus_path(args.corpus))
    report = answer(args.question, graph, default_lexicon(), default_grammar(), _config(args))
    _print_report(report, explain=args.explain)
    return 0 if report.status != "no_parse" else 1


def _cmd_repl(args: argparse.Namespace) -> int:
    graph, load_report = load_corpus(_corpus_path(args.corpus))
    lexicon, grammar = default_lexicon(), default_grammar()
    config = _config(args)
    print(f"{load_report.loaded} course records loaded; empty line or Ctrl-D exits")
    while True:
        try:
            question = input("? ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        if not question or question in {"exit", "quit"}:
            return 0
        _print_report(answer(question, graph, lexicon, grammar, config), explain=args.explain)
        print()


def _cmd_suite(args: argparse.Namespace) -> int:
    graph, _ = load_corpus(_corpus_path(args.corpus))
    result = run_suite(args.file, graph, default_lexicon(), default_grammar(), _config(args))
    for entry in result.entries:
        mark = "PASS" if entry.ok else "FAIL"
        print(f"{mark}  {entry.question}")
        if not entry.ok:
            print(f"      {entry.reason}")
    print(result.summary())
    return 0 if result.passed == result.total else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(
        _corpus_path(args.corpus),
        port=args.port,
        host=args.host,
        static_dir=args.static,
        config=_config(args),
    )
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vncourseqa",
        description="Vietnamese question answering over a course-metadata knowledge base",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_load = sub.add_parser("load", help="validate a corpus file and report")
    p_load.add_argument("--corpus", help="JSON Lines corpus file (default: packaged demo)")
    p_load.set_defaults(func=_cmd_load)

    p_ask = sub.add_parser("ask", help="answer one question")
    p_ask.add_argument("question")
    p_ask.add_argument("--corpus")
    p_ask.add_argument("--explain", action="store_true", help="show parse tree and intent")
    p_ask.add_argument("--substring-match", action="store_true",
                       help="match literals as substrings instead of exactly")
    p_ask.set_defaults(func=_cmd_ask)

    p_repl = sub.add_parser("repl", help="interactive question loop")
    p_repl.add_argument("--corpus")
    p_repl.add_argument("--explain", action="store_true")
    p_repl.add_argument("--substring-match", action="store_true")
    p_repl.set_defaults(func=_cmd_repl)

    p_suite = sub.add_parser("suite", help="run a question suite with expectations")
    p_suite.add_argument("--file", required=True, help="JSON Lines suite file")
    p_suite.add_argument("--corpus")
    p_suite.add_argument("--substring-match", action="store_true")
    p_suite.set_defaults(func=_cmd_suite)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--corpus")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", help="directory of web UI assets to serve")
    p_serve.add_argument("--substring-match", action="store_true")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
