"""Ontology-style triple store for course metadata.

Entities are typed (Author, Course, Publisher, ...), carry exactly one
``content`` name literal, and are linked by schema-checked relation triples.
Inverse relations (write/isWrittenBy, publish/isPublishedBy) are materialized
by :func:`apply_inference` after ingest. Entity identity is keyed by
(class, normalized content) so repeated ingest is idempotent.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .lexicon import normalize

CONTENT = "content"
ANY_CLASS = "*"


class KbError(ValueError):
    pass


class ConsistencyError(KbError):
    def __init__(self, prop: str, expected: str, got: str, position: str):
        self.prop = prop
        self.expected = expected
        self.got = got
        super().__init__(
            f"property {prop!r} expects {position} class {expected!r}, got {got!r}"
        )


class IngestError(KbError):
    def __init__(self, record_id: str, message: str):
        self.record_id = record_id
        super().__init__(f"record {record_id!r}: {message}")


@dataclass(frozen=True)
class Literal:
    value: str

    def __repr__(self) -> str:  # keep violation reports readable
        return f"Literal({self.value!r})"


Term = str | Literal  # entity id or literal


@dataclass(frozen=True)
class Triple:
    subject: str
    prop: str
    obj: Term


@dataclass(frozen=True)
class Property:
    name: str
    domain: str
    range_: str  # class name or "Literal"


@dataclass(frozen=True)
class Schema:
    classes: frozenset[str]
    properties: dict[str, Property]
    inverse_pairs: tuple[tuple[str, str], ...]

    def inverse_of(self, prop: str) -> str | None:
        for a, b in self.inverse_pairs:
            if prop == a:
                return b
            if prop == b:
                return a
        return None


DEFAULT_SCHEMA = Schema(
    classes=frozenset(
        {"Author", "Course", "Publisher", "Year", "Subject", "Place", "Price"}
    ),
    properties={
        "write": Property("write", "Author", "Course"),
        "isWrittenBy": Property("isWrittenBy", "Course", "Author"),
        "publish": Property("publish", "Publisher", "Course"),
        "isPublishedBy": Property("isPublishedBy", "Course", "Publisher"),
        "isWrittenIn": Property("isWrittenIn", "Course", "Year"),
        "hasSubject": Property("hasSubject", "Course", "Subject"),
        "publishedAt": Property("publishedAt", "Course", "Place"),
        "locatedAt": Property("locatedAt", "Publisher", "Place"),
        "hasPrice": Property("hasPrice", "Course", "Price"),
        CONTENT: Property(CONTENT, ANY_CLASS, "Literal"),
    },
    inverse_pairs=(("write", "isWrittenBy"), ("publish", "isPublishedBy")),
)


def entity_id(cls: str, content: str) -> str:
    return f"{cls.lower()}/{normalize(content)}"


class Graph:
    """In-memory triple store with (property, position) indexes.

    Mutating it while queries run is not supported: build a graph fully
    (ingest, inference), then share it read-only. Reloads construct a fresh
    graph and swap the reference.
    """

    def __init__(self, schema: Schema = DEFAULT_SCHEMA):
        self.schema = schema
        self.entity_class: dict[str, str] = {}
        self.triples: set[Triple] = set()
        self._by_prop: dict[str, set[tuple[str, Term]]] = {}
        self._by_ps: dict[tuple[str, str], set[Term]] = {}
        self._by_po: dict[tuple[str, Term], set[str]] = {}

    # -- construction ------------------------------------------------------

    def declare_entity(self, cls: str, eid: str) -> None:
        if cls not in self.schema.classes:
            raise KbError(f"unknown class {cls!r}")
        existing = self.entity_class.get(eid)
        if existing is not None and existing != cls:
            raise KbError(f"entity {eid!r} already declared as {existing!r}")
        self.entity_class[eid] = cls

    def ensure_entity(self, cls: str, content: str) -> str:
        """Register (and name) the entity identified by its class and content."""
        eid = entity_id(cls, content)
        if eid not in self.entity_class:
            self.declare_entity(cls, eid)
            self.insert(Triple(eid, CONTENT, Literal(content)))
        return eid

    def insert(self, triple: Triple) -> "Graph":
        """Add one schema-checked triple; set semantics, so re-adding is a no-op."""
        prop = self.schema.properties.get(triple.prop)
        if prop is None:
            raise KbError(f"unknown property {triple.prop!r}")
        subj_cls = self.entity_class.get(triple.subject)
        if subj_cls is None:
            raise KbError(f"unknown entity {triple.subject!r}")
        if prop.domain != ANY_CLASS and subj_cls != prop.domain:
            raise ConsistencyError(prop.name, prop.domain, subj_cls, "domain")
        if prop.range_ == "Literal":
            if not isinstance(triple.obj, Literal):
                raise ConsistencyError(prop.name, "Literal", "entity", "range")
        else:
            if isinstance(triple.obj, Literal):
                raise ConsistencyError(prop.name, prop.range_, "Literal", "range")
            obj_cls = self.entity_class.get(triple.obj)
            if obj_cls is None:
                raise KbError(f"unknown entity {triple.obj!r}")
            if obj_cls != prop.range_:
                raise ConsistencyError(prop.name, prop.range_, obj_cls, "range")
        if triple in self.triples:
            return self
        self.triples.add(triple)
        self._by_prop.setdefault(triple.prop, set()).add((triple.subject, triple.obj))
        self._by_ps.setdefault((triple.prop, triple.subject), set()).add(triple.obj)
        self._by_po.setdefault((triple.prop, triple.obj), set()).add(triple.subject)
        return self

    # -- lookups -----------------------------------------------------------

    def pairs(self, prop: str) -> set[tuple[str, Term]]:
        return self._by_prop.get(prop, set())

    def objects(self, prop: str, subject: str) -> set[Term]:
        return self._by_ps.get((prop, subject), set())

    def subjects(self, prop: str, obj: Term) -> set[str]:
        return self._by_po.get((prop, obj), set())

    def content_of(self, eid: str) -> str | None:
        for obj in self.objects(CONTENT, eid):
            if isinstance(obj, Literal):
                return obj.value
        return None

    def entities_of_class(self, cls: str) -> list[str]:
        return sorted(e for e, c in self.entity_class.items() if c == cls)

    def literals(self) -> set[Literal]:
        return {t.obj for t in self.triples if isinstance(t.obj, Literal)}

    def class_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for cls in self.entity_class.values():
            counts[cls] = counts.get(cls, 0) + 1
        return counts

    def course_count(self) -> int:
        return self.class_counts().get("Course", 0)

    def canonical_triples(self) -> frozenset[tuple[str, str, str]]:
        """Content-keyed form, stable across entity-id renamings."""

        def key(term: Term) -> str:
            if isinstance(term, Literal):
                return f"lit:{term.value}"
            return f"{self.entity_class[term]}:{normalize(self.content_of(term) or term)}"

        return frozenset((key(t.subject), t.prop, key(t.obj)) for t in self.triples)


def apply_inference(graph: Graph) -> Graph:
    """Materialize the inverse-relation closure; idempotent."""
    while True:
        missing = []
        for triple in graph.triples:
            inv = graph.schema.inverse_of(triple.prop)
            if inv is None or isinstance(triple.obj, Literal):
                continue
            mirrored = Triple(triple.obj, inv, triple.subject)
            if mirrored not in graph.triples:
                missing.append(mirrored)
        if not missing:
            return graph
        for triple in missing:
            graph.insert(triple)


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str


def check_consistency(graph: Graph) -> list[Violation]:
    """Report (never raise) schema and naming violations."""
    violations: list[Violation] = []
    for triple in sorted(graph.triples, key=lambda t: (t.subject, t.prop, repr(t.obj))):
        prop = graph.schema.properties.get(triple.prop)
        if prop is None:
            violations.append(Violation("unknown-property", triple.subject, triple.prop))
            continue
        subj_cls = graph.entity_class.get(triple.subject)
        if prop.domain != ANY_CLASS and subj_cls != prop.domain:
            violations.append(
                Violation(
                    "domain",
                    triple.subject,
                    f"{triple.prop}: expected {prop.domain}, got {subj_cls}",
                )
            )
        if prop.range_ == "Literal":
            if not isinstance(triple.obj, Literal):
                violations.append(
                    Violation("range", triple.subject, f"{triple.prop}: expected literal")
                )
        elif isinstance(triple.obj, Literal) or graph.entity_class.get(triple.obj) != prop.range_:
            violations.append(
                Violation(
                    "range",
                    triple.subject,
                    f"{triple.prop}: expected {prop.range_}, got {triple.obj!r}",
                )
            )
    for eid in sorted(graph.entity_class):
        names = [o for o in graph.objects(CONTENT, eid) if isinstance(o, Literal)]
        if not names:
            violations.append(Violation("missing-content", eid, "entity has no content literal"))
        elif len(names) > 1:
            violations.append(
                Violation("multiple-content", eid, f"entity has {len(names)} content literals")
            )
    return violations


# -- corpus ingest -----------------------------------------------------------

_LIST_FIELDS = ("authors", "copyright_holders", "maintainers", "keywords", "affiliations")
_SCALAR_FIELDS = ("id", "name", "language", "summary", "version", "publisher",
                  "year", "subject", "place", "price")


@dataclass(frozen=True)
class CourseRecord:
    id: str
    name: str
    language: str = ""
    summary: str = ""
    authors: tuple[str, ...] = ()
    copyright_holders: tuple[str, ...] = ()
    maintainers: tuple[str, ...] = ()
    keywords: tuple[str, ...] = ()
    version: str = ""
    affiliations: tuple[str, ...] = ()
    publisher: str | None = None
    year: str | None = None
    subject: str | None = None
    place: str | None = None
    price: str | None = None

    @staticmethod
    def from_dict(data: dict, default_id: str) -> tuple["CourseRecord", list[str]]:
        warnings = [
            f"unknown field {key!r} ignored"
            for key in data
            if key not in _LIST_FIELDS and key not in _SCALAR_FIELDS
        ]

        def clean(value: object) -> str:
            return " ".join(str(value).split())

        record = CourseRecord(
            id=clean(data.get("id", default_id)) or default_id,
            name=clean(data.get("name", "")),
            language=clean(data.get("language", "")),
            summary=str(data.get("summary", "")),
            authors=tuple(clean(a) for a in data.get("authors", []) if clean(a)),
            copyright_holders=tuple(clean(a) for a in data.get("copyright_holders", []) if clean(a)),
            maintainers=tuple(clean(a) for a in data.get("maintainers", []) if clean(a)),
            keywords=tuple(clean(a) for a in data.get("keywords", []) if clean(a)),
            version=clean(data.get("version", "")),
            affiliations=tuple(clean(a) for a in data.get("affiliations", []) if clean(a)),
            publisher=clean(data["publisher"]) or None if data.get("publisher") else None,
            year=clean(data["year"]) or None if data.get("year") else None,
            subject=clean(data["subject"]) or None if data.get("subject") else None,
            place=clean(data["place"]) or None if data.get("place") else None,
            price=clean(data["price"]) or None if data.get("price") else None,
        )
        return record, warnings

    def validate(self) -> None:
        if not self.name:
            raise IngestError(self.id, "course name is empty")
        if self.year is not None and not (self.year.isdigit() and 3 <= len(self.year) <= 4):
            raise IngestError(self.id, f"year must be 3-4 digits, got {self.year!r}")


def record_to_triples(record: CourseRecord) -> list[Triple]:
    """Deterministic triple mapping for one course record.

    Entities are keyed by (class, normalized content); the caller is expected
    to register them via ``ensure_entity`` before inserting.
    """
    record.validate()
    course = entity_id("Course", record.name)
    triples = [Triple(course, CONTENT, Literal(record.name))]
    for author in record.authors:
        aid = entity_id("Author", author)
        triples.append(Triple(aid, CONTENT, Literal(author)))
        triples.append(Triple(aid, "write", course))
    if record.publisher:
        pid = entity_id("Publisher", record.publisher)
        triples.append(Triple(pid, CONTENT, Literal(record.publisher)))
        triples.append(Triple(pid, "publish", course))
    if record.year:
        yid = entity_id("Year", record.year)
        triples.append(Triple(yid, CONTENT, Literal(record.year)))
        triples.append(Triple(course, "isWrittenIn", yid))
    if record.subject:
        sid = entity_id("Subject", record.subject)
        triples.append(Triple(sid, CONTENT, Literal(record.subject)))
        triples.append(Triple(course, "hasSubject", sid))
    if record.place:
        lid = entity_id("Place", record.place)
        triples.append(Triple(lid, CONTENT, Literal(record.place)))
        triples.append(Triple(course, "publishedAt", lid))
        if record.publisher:
            # a record naming both publisher and place also locates the publisher
            triples.append(Triple(entity_id("Publisher", record.publisher), "locatedAt", lid))
    if record.price:
        prid = entity_id("Price", record.price)
        triples.append(Triple(prid, CONTENT, Literal(record.price)))
        triples.append(Triple(course, "hasPrice", prid))
    return triples


_CLASS_OF_ID_PREFIX = {c.lower(): c for c in DEFAULT_SCHEMA.classes}


@dataclass
class LoadReport:
    records: list[CourseRecord] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[tuple[int, str]] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def loaded(self) -> int:
        return len(self.records)


def ingest_records(records: Iterable[CourseRecord], graph: Graph | None = None) -> Graph:
    """Insert fully validated records into a (possibly fresh) graph."""
    graph = graph if graph is not None else Graph()
    for record in records:
        _insert_record(graph, record)
    return apply_inference(graph)


def _insert_record(graph: Graph, record: CourseRecord) -> None:
    for triple in record_to_triples(record):
        cls = _CLASS_OF_ID_PREFIX[triple.subject.split("/", 1)[0]]
        if triple.prop == CONTENT:
            assert isinstance(triple.obj, Literal)
            graph.ensure_entity(cls, triple.obj.value)  # first content wins
        else:
            graph.insert(triple)


def parse_corpus(text: str) -> tuple[list[CourseRecord], LoadReport]:
    """Parse JSON Lines course records, collecting per-record errors."""
    report = LoadReport()
    for index, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
            if not isinstance(data, dict):
                raise ValueError("record must be a JSON object")
            record, warnings = CourseRecord.from_dict(data, default_id=f"r{index}")
            record.validate()
        except (ValueError, IngestError) as exc:
            report.errors.append((index, str(exc)))
            continue
        for w in warnings:
            report.warnings.append((index, w))
        report.records.append(record)
    return report.records, report


def load_corpus(path: str | Path) -> tuple[Graph, LoadReport]:
    """Load a JSON Lines corpus file into a fresh, inference-closed graph."""
    text = unicodedata.normalize("NFC", Path(path).read_text(encoding="utf-8"))
    records, report = parse_corpus(text)
    graph = ingest_records(records)
    report.violations = check_consistency(graph)
    return graph, report
