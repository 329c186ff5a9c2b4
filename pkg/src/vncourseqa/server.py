"""HTTP service exposing the question-answering pipeline.

Endpoints (all JSON, UTF-8):
  POST /api/ask    {"question": "..."} -> answer report
  GET  /api/health -> {"status": "up", "courses": N}
  GET  /api/stats  -> entity/triple counts
Optionally serves a static asset directory (the web UI) for all other GETs.

Requests run against an immutable graph snapshot; ``reload_corpus`` builds a
new snapshot off to the side and swaps it in atomically.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .app import answer
from .config import QaConfig
from .grammar import Grammar
from .kb import Graph, LoadReport, load_corpus
from .lexicon import Lexicon
from .resources import default_grammar, default_lexicon


@dataclass
class _Snapshot:
    graph: Graph
    report: LoadReport


class QaService:
    """Holds the pipeline assets plus the swappable graph snapshot."""

    def __init__(
        self,
        corpus_path: str | Path,
        lexicon: Lexicon | None = None,
        grammar: Grammar | None = None,
        config: QaConfig | None = None,
        static_dir: str | Path | None = None,
    ):
        self.lexicon = lexicon or default_lexicon()
        self.grammar = grammar or default_grammar()
        self.config = config or QaConfig()
        self.static_dir = Path(static_dir).resolve() if static_dir else None
        self._lock = threading.Lock()
        self._snapshot = self._load(corpus_path)

    def _load(self, corpus_path: str | Path) -> _Snapshot:
        graph, report = load_corpus(corpus_path)
        return _Snapshot(graph=graph, report=report)

    def reload_corpus(self, corpus_path: str | Path) -> LoadReport:
        snapshot = self._load(corpus_path)
        with self._lock:
            self._snapshot = snapshot
        return snapshot.report

    @property
    def graph(self) -> Graph:
        return self._snapshot.graph

    @property
    def load_report(self) -> LoadReport:
        return self._snapshot.report

    def ask(self, question: str) -> dict:
        report = answer(question, self.graph, self.lexicon, self.grammar, self.config)
        return report.to_dict()

    def health(self) -> dict:
        return {"status": "up", "courses": self.graph.course_count()}

    def stats(self) -> dict:
        graph = self.graph
        return {
            "entities": len(graph.entity_class),
            "triples": len(graph.triples),
            "courses": graph.course_count(),
            "classes": graph.class_counts(),
        }


class _Handler(BaseHTTPRequestHandler):
    service: QaService  # set on the subclass created in make_server
    quiet = True

    def log_message(self, fmt: str, *args) -> None:
        if not self.quiet:
            super().log_message(fmt, *args)

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self) -> None:  # noqa: N802 (http.server naming)
        if self.path != "/api/ask":
            self._send_json({"error": "not found"}, 404)
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            data = json.loads(self.rfile.read(length).decode("utf-8") or "{}")
        except (ValueError, UnicodeDecodeError):
            self._send_json({"error": "invalid JSON body"}, 400)
            return
        question = str(data.get("question", "")).strip() if isinstance(data, dict) else ""
        if not question:
            self._send_json({"error": "empty question"}, 400)
            return
        self._send_json(self.service.ask(question))

    def do_GET(self) -> None:  # noqa: N802
        if self.path == "/api/health":
            self._send_json(self.service.health())
            return
        if self.path == "/api/stats":
            self._send_json(self.service.stats())
            return
        if self.path.startswith("/api/"):
            self._send_json({"error": "not found"}, 404)
            return
        self._send_static()

    def _send_static(self) -> None:
        root = self.service.static_dir
        if root is None:
            self._send_json({"error": "no static assets configured"}, 404)
            return
        relative = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (root / relative).resolve()
        if not str(target).startswith(str(root)) or not target.is_file():
            self._send_json({"error": "not found"}, 404)
            return
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(service: QaService, host: str = "127.0.0.1", port: int = 8000) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve(
    corpus_path: str | Path,
    port: int = 8000,
    host: str = "127.0.0.1",
    static_dir: str | Path | None = None,
    config: QaConfig | None = None,
) -> None:
    """Load the corpus and serve until interrupted."""
    service = QaService(corpus_path, config=config, static_dir=static_dir)
    httpd = make_server(service, host=host, port=port)
    report = service.load_report
    print(f"loaded {report.loaded} course records "
          f"({len(report.errors)} errors, {len(report.violations)} violations)")
    print(f"serving on http://{host}:{httpd.server_address[1]}/")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
