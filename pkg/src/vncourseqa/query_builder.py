"""Compiling decomposed intents into a SPARQL-subset query AST.

The AST covers exactly what questions need: SELECT DISTINCT / COUNT DISTINCT
projection, variable-only triple patterns, anchored case-insensitive regex
filters, UNION for "hoặc", and nested sub-selects joined on the projection
variable for "và" chains. ``serialize`` renders the query text (properties
shown with per-class display prefixes); ``read_query`` parses that text back,
which keeps the format honest via round-trip tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import QaConfig
from .intent import (
    AUTHOR,
    BOOK_LIST,
    COUNT_BOOKS,
    PLACE_OF_PUBLICATION,
    PLACE_OF_PUBLISHER,
    PRICE,
    PUBLISHER,
    SUBJECT,
    YEAR_OF_PUBLISHING,
    YEAR_OF_WRITING,
    DecomposedIntent,
    QueryIntent,
)
from .kb import CONTENT, DEFAULT_SCHEMA


class QueryBuildError(ValueError):
    pass


class QueryReadError(ValueError):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class TriplePattern:
    s: str  # subject variable
    p: str  # property name
    o: str  # object variable


@dataclass(frozen=True)
class Filter:
    var: str
    pattern: str
    flags: str = "i"


@dataclass(frozen=True)
class GroupPattern:
    elements: tuple = ()


@dataclass(frozen=True)
class Union:
    left: GroupPattern
    right: GroupPattern


@dataclass(frozen=True)
class SubSelect:
    select: "Select"


@dataclass(frozen=True)
class ProjectVar:
    var: str


@dataclass(frozen=True)
class ProjectCount:
    var: str
    alias: str = "count"


@dataclass(frozen=True)
class Select:
    projection: ProjectVar | ProjectCount
    dataset: str
    where: GroupPattern
    var_classes: dict[str, str] = field(default_factory=dict)
    distinct: bool = True


# display prefixes keyed by the class of a pattern's subject variable;
# they carry no retrieval semantics
CLASS_PREFIX = {
    "Author": "cs_author",
    "Course": "cs_name",
    "Year": "cs_created",
    "Publisher": "cs_publisher",
    "Subject": "cs_subject",
    "Place": "cs_place",
    "Price": "cs_price",
}
PREFIX_CLASS = {v: k for k, v in CLASS_PREFIX.items()}

_ENTITY_VAR = {
    "Author": "author",
    "Course": "course",
    "Publisher": "publisher",
    "Year": "year",
    "Subject": "subject",
    "Place": "place",
    "Price": "price",
}
_NAME_VAR = {
    "author": "authorname",
    "course": "coursename",
    "publisher": "publishername",
    "year": "yearname",
    "subject": "subjectname",
    "place": "placename",
    "price": "pricename",
}

_REGEX_SPECIALS = set("\\.^$*+?()[]{}|")


def _escape_regex(value: str) -> str:
    return "".join("\\" + ch if ch in _REGEX_SPECIALS else ch for ch in value)


def escape_literal(value: str) -> str:
    """Anchored exact-match pattern for a literal value."""
    return f"^{_escape_regex(value)}$"


# -- building ----------------------------------------------------------------


class _SingleBuilder:
    def __init__(self, intent: QueryIntent, config: QaConfig):
        self.intent = intent
        self.config = config
        self.elements: list = []
        self.var_classes: dict[str, str] = {}

    def _var(self, cls: str) -> str:
        var = _ENTITY_VAR[cls]
        self.var_classes[var] = cls
        return var

    def _ensure(self, pattern: TriplePattern) -> int:
        for index, el in enumerate(self.elements):
            if el == pattern:
                return index
        self.elements.append(pattern)
        return len(self.elements) - 1

    def _content(self, cls: str) -> tuple[str, int]:
        var = self._var(cls)
        index = self._ensure(TriplePattern(var, CONTENT, _NAME_VAR[var]))
        return var, index

    def _filter(self, cls: str, value: str) -> None:
        var, index = self._content(cls)
        pattern = (
            _escape_regex(value) if self.config.substring_match else escape_literal(value)
        )
        self.elements.insert(index + 1, Filter(_NAME_VAR[var], pattern))

    def build(self) -> tuple[ProjectVar | ProjectCount, GroupPattern, dict[str, str]]:
        intent = self.intent
        target = intent.target

        if target == AUTHOR:
            projection = ProjectVar(_NAME_VAR["author"])
            self._content("Author")
            self._ensure(TriplePattern(self._var("Author"), "write", self._var("Course")))
        elif target == PUBLISHER:
            projection = ProjectVar(_NAME_VAR["publisher"])
            self._content("Publisher")
            self._ensure(TriplePattern(self._var("Publisher"), "publish", self._var("Course")))
        elif target in (YEAR_OF_WRITING, YEAR_OF_PUBLISHING):
            projection = ProjectVar(_NAME_VAR["year"])
            self._content("Year")
            self._ensure(TriplePattern(self._var("Course"), "isWrittenIn", self._var("Year")))
        elif target == SUBJECT:
            projection = ProjectVar(_NAME_VAR["subject"])
            self._content("Subject")
            self._ensure(TriplePattern(self._var("Course"), "hasSubject", self._var("Subject")))
        elif target == BOOK_LIST:
            projection = ProjectVar(_NAME_VAR["course"])
            self._content("Course")
        elif target == PLACE_OF_PUBLICATION:
            projection = ProjectVar(_NAME_VAR["place"])
            self._content("Place")
            self._ensure(TriplePattern(self._var("Course"), "publishedAt", self._var("Place")))
        elif target == PLACE_OF_PUBLISHER:
            projection = ProjectVar(_NAME_VAR["place"])
            self._content("Place")
            self._ensure(TriplePattern(self._var("Publisher"), "locatedAt", self._var("Place")))
        elif target == PRICE:
            projection = ProjectVar(_NAME_VAR["price"])
            self._content("Price")
            self._ensure(TriplePattern(self._var("Course"), "hasPrice", self._var("Price")))
        elif target == COUNT_BOOKS:
            projection = ProjectCount(self._var("Course"))
            self._content("Course")
        else:
            raise QueryBuildError(f"unsupported target {target!r}")

        for name in ("title", "author", "publisher", "year", "subject", "place"):
            slot = intent.slots.get(name)
            if slot is None:
                continue
            if slot.is_multi:
                raise QueryBuildError("multi-valued slot reached the single builder")
            value = slot.values[0]
            if name == "title":
                self._filter("Course", value)
            elif name == "author":
                self._filter("Author", value)
                self._ensure(TriplePattern(self._var("Author"), "write", self._var("Course")))
            elif name == "publisher":
                self._filter("Publisher", value)
                if target != PLACE_OF_PUBLISHER:
                    self._ensure(
                        TriplePattern(self._var("Publisher"), "publish", self._var("Course"))
                    )
            elif name == "year":
                self._filter("Year", value)
                self._ensure(TriplePattern(self._var("Course"), "isWrittenIn", self._var("Year")))
            elif name == "subject":
                self._filter("Subject", value)
                self._ensure(TriplePattern(self._var("Course"), "hasSubject", self._var("Subject")))
            elif name == "place":
                self._filter("Place", value)
                if target == PLACE_OF_PUBLISHER:
                    self._ensure(
                        TriplePattern(self._var("Publisher"), "locatedAt", self._var("Place"))
                    )
                else:
                    self._ensure(
                        TriplePattern(self._var("Course"), "publishedAt", self._var("Place"))
                    )

        return projection, GroupPattern(tuple(self.elements)), dict(self.var_classes)


def _join_projection(projection: ProjectVar | ProjectCount) -> ProjectVar:
    """The variable nested sub-queries project and join on."""
    if isinstance(projection, ProjectCount):
        return ProjectVar(projection.var)
    return projection


def _build_chain(
    intents: tuple[QueryIntent, ...], config: QaConfig, outermost: bool
) -> Select:
    projection, group, var_classes = _SingleBuilder(intents[0], config).build()
    if not outermost:
        projection = _join_projection(projection)
    elements = list(group.elements)
    if len(intents) > 1:
        sub = _build_chain(intents[1:], config, outermost=False)
        elements.append(SubSelect(sub))
    return Select(
        projection=projection,
        dataset=config.dataset_label,
        where=GroupPattern(tuple(elements)),
        var_classes=var_classes,
    )


def _build_union(intents: tuple[QueryIntent, ...], config: QaConfig) -> Select:
    branches: list[GroupPattern] = []
    merged: dict[str, str] = {}
    projection = None
    for intent in intents:
        proj, group, var_classes = _SingleBuilder(intent, config).build()
        branches.append(group)
        merged.update(var_classes)
        projection = proj
    union = Union(branches[0], branches[1])
    for branch in branches[2:]:
        union = Union(GroupPattern((union,)), branch)
    return Select(
        projection=projection,
        dataset=config.dataset_label,
        where=GroupPattern((union,)),
        var_classes=merged,
    )


def build_query(decomposed: DecomposedIntent, config: QaConfig | None = None) -> Select:
    """Compile a decomposed intent into a query AST."""
    config = config or QaConfig()
    if decomposed.mode == "or" and len(decomposed.intents) > 1:
        return _build_union(decomposed.intents, config)
    return _build_chain(decomposed.intents, config, outermost=True)


# -- structural well-formedness ----------------------------------------------


def _pattern_vars(group: GroupPattern) -> set[str]:
    """Variables bound by this group (union branches must all bind them)."""
    bound: set[str] = set()
    branch_sets = []
    for el in group.elements:
        if isinstance(el, TriplePattern):
            bound.update((el.s, el.o))
        elif isinstance(el, SubSelect):
            bound.add(_join_projection(el.select.projection).var)
        elif isinstance(el, Union):
            branch_sets.append(_pattern_vars(el.left) & _pattern_vars(el.right))
    for common in branch_sets:
        bound.update(common)
    return bound


def check_well_formed(select: Select) -> list[str]:
    """Return structural problems (empty list when well-formed)."""
    problems: list[str] = []

    def check_group(group: GroupPattern, enclosing: str) -> None:
        bound = _pattern_vars(group)
        for el in group.elements:
            if isinstance(el, Filter):
                if el.var not in bound:
                    problems.append(f"{enclosing}: filter on unbound ?{el.var}")
            elif isinstance(el, SubSelect):
                join_var = _join_projection(el.select.projection).var
                if join_var not in _pattern_vars(GroupPattern(tuple(
                    e for e in group.elements if not isinstance(e, SubSelect)
                ))):
                    problems.append(
                        f"{enclosing}: sub-select join variable ?{join_var} not shared"
                    )
                check_select(el.select, enclosing + ".sub")
            elif isinstance(el, Union):
                check_group(el.left, enclosing + ".union.left")
                check_group(el.right, enclosing + ".union.right")

    def check_select(sel: Select, label: str) -> None:
        proj_var = (
            sel.projection.var
            if isinstance(sel.projection, (ProjectVar, ProjectCount))
            else None
        )
        if proj_var not in _pattern_vars(sel.where):
            problems.append(f"{label}: projection ?{proj_var} not bound in WHERE")
        check_group(sel.where, label)

    check_select(select, "query")
    return problems


# -- serialization -------------------------------------------------------------


def _display_prop(pattern: TriplePattern, var_classes: dict[str, str]) -> str:
    prefix = CLASS_PREFIX.get(var_classes.get(pattern.s, ""), "cs")
    return f"{prefix}:{pattern.p}"


def serialize(select: Select) -> str:
    """Deterministic query text; stable under read_query round-trips."""
    return "\n".join(_ser_select(select, 0))


def _ser_select(sel: Select, depth: int) -> list[str]:
    pad = "    " * depth
    if isinstance(sel.projection, ProjectCount):
        head = f"{pad}SELECT (COUNT(DISTINCT ?{sel.projection.var}) AS ?{sel.projection.alias})"
    else:
        head = f"{pad}SELECT DISTINCT ?{sel.projection.var}"
    lines = [head, f"{pad}FROM <{sel.dataset}>", f"{pad}WHERE {{"]
    lines.extend(_ser_elements(sel.where, sel.var_classes, depth + 1))
    lines.append(f"{pad}}}")
    return lines


def _ser_elements(group: GroupPattern, var_classes: dict[str, str], depth: int) -> list[str]:
    pad = "    " * depth
    blocks: list[list[str]] = []
    elements = list(group.elements)
    i = 0
    while i < len(elements):
        el = elements[i]
        if isinstance(el, TriplePattern):
            text = f"?{el.s} {_display_prop(el, var_classes)} ?{el.o}"
            nxt = elements[i + 1] if i + 1 < len(elements) else None
            if isinstance(nxt, Filter) and nxt.var == el.o:
                blocks.append(
                    [
                        f"{pad}{{{text}",
                        f'{pad}FILTER regex(?{nxt.var} , "{nxt.pattern}", "{nxt.flags}").',
                        f"{pad}}}",
                    ]
                )
                i += 2
            else:
                blocks.append([f"{pad}{{{text}}}"])
                i += 1
        elif isinstance(el, Filter):
            blocks.append([f'{pad}FILTER regex(?{el.var} , "{el.pattern}", "{el.flags}")'])
            i += 1
        elif isinstance(el, SubSelect):
            inner = [f"{pad}{{"]
            inner.extend(_ser_select(el.select, depth))
            inner.append(f"{pad}}}")
            blocks.append(inner)
            i += 1
        elif isinstance(el, Union):
            blk = [f"{pad}{{"]
            blk.extend(_ser_elements(el.left, var_classes, depth + 1))
            blk.append(f"{pad}}}")
            blk.append(f"{pad}UNION")
            blk.append(f"{pad}{{")
            blk.extend(_ser_elements(el.right, var_classes, depth + 1))
            blk.append(f"{pad}}}")
            blocks.append(blk)
            i += 1
        else:
            raise QueryBuildError(f"cannot serialize element {el!r}")
    out: list[str] = []
    for j, blk in enumerate(blocks):
        out.extend(blk)
        if j < len(blocks) - 1:
            out.append(f"{pad}.")
    return out


# -- reading -------------------------------------------------------------------


def _tokenize_query(text: str) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "{}().,":
            tokens.append(ch)
            i += 1
        elif ch == "<":
            close = text.find(">", i)
            if close == -1:
                raise QueryReadError("unclosed '<'")
            tokens.append(text[i : close + 1])
            i = close + 1
        elif ch == '"':
            close = text.find('"', i + 1)
            if close == -1:
                raise QueryReadError("unclosed string")
            tokens.append(text[i : close + 1])
            i = close + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '{}(),."<':
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


class _Reader:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise QueryReadError("unexpected end of query")
        self.pos += 1
        return tok

    def expect(self, want: str) -> None:
        tok = self.next()
        if tok != want:
            raise QueryReadError(f"expected {want!r}, got {tok!r}")

    def var(self) -> str:
        tok = self.next()
        if not tok.startswith("?"):
            raise QueryReadError(f"expected a variable, got {tok!r}")
        return tok[1:]

    def string(self) -> str:
        tok = self.next()
        if not (tok.startswith('"') and tok.endswith('"')):
            raise QueryReadError(f"expected a string, got {tok!r}")
        return tok[1:-1]

    def read_select(self) -> Select:
        self.expect("SELECT")
        if self.peek() == "(":
            self.expect("(")
            self.expect("COUNT")
            self.expect("(")
            self.expect("DISTINCT")
            var = self.var()
            self.expect(")")
            self.expect("AS")
            alias = self.var()
            self.expect(")")
            projection: ProjectVar | ProjectCount = ProjectCount(var, alias)
        else:
            self.expect("DISTINCT")
            projection = ProjectVar(self.var())
        self.expect("FROM")
        dataset_tok = self.next()
        if not (dataset_tok.startswith("<") and dataset_tok.endswith(">")):
            raise QueryReadError(f"expected '<dataset>', got {dataset_tok!r}")
        self.expect("WHERE")
        var_classes: dict[str, str] = {}
        group = self.read_group(var_classes)
        return Select(
            projection=projection,
            dataset=dataset_tok[1:-1],
            where=group,
            var_classes=var_classes,
        )

    def read_group(self, var_classes: dict[str, str]) -> GroupPattern:
        self.expect("{")
        elements: list = []
        while True:
            tok = self.peek()
            if tok is None:
                raise QueryReadError("unclosed group")
            if tok == ".":
                self.next()
                continue
            if tok == "}":
                self.next()
                return GroupPattern(tuple(elements))
            if tok == "FILTER":
                elements.append(self.read_filter())
                continue
            if tok == "{":
                elements.extend(self.read_block(var_classes))
                continue
            raise QueryReadError(f"unexpected token {tok!r} in group")

    def read_block(self, var_classes: dict[str, str]) -> list:
        self.expect("{")
        tok = self.peek()
        if tok == "SELECT":
            select = self.read_select()
            self.expect("}")
            return [SubSelect(select)]
        if tok is not None and tok.startswith("?"):
            subject = self.var()
            prop_tok = self.next()
            if ":" not in prop_tok:
                raise QueryReadError(f"expected prefixed property, got {prop_tok!r}")
            prefix, prop = prop_tok.split(":", 1)
            obj = self.var()
            cls = PREFIX_CLASS.get(prefix)
            if cls is not None:
                var_classes.setdefault(subject, cls)
            schema_prop = DEFAULT_SCHEMA.properties.get(prop)
            if schema_prop is not None and schema_prop.range_ != "Literal":
                var_classes.setdefault(obj, schema_prop.range_)
            out: list = [TriplePattern(subject, prop, obj)]
            if self.peek() == "FILTER":
                out.append(self.read_filter())
            while self.peek() == ".":
                self.next()
            self.expect("}")
            return out
        # otherwise this brace opens a union operand group
        left_elements: list = []
        while True:
            inner = self.peek()
            if inner is None:
                raise QueryReadError("unclosed union group")
            if inner == ".":
                self.next()
                continue
            if inner == "}":
                self.next()
                break
            if inner == "FILTER":
                left_elements.append(self.read_filter())
                continue
            left_elements.extend(self.read_block(var_classes))
        self.expect("UNION")
        right_reader_elements: list = []
        self.expect("{")
        while True:
            inner = self.peek()
            if inner is None:
                raise QueryReadError("unclosed union group")
            if inner == ".":
                self.next()
                continue
            if inner == "}":
                self.next()
                break
            if inner == "FILTER":
                right_reader_elements.append(self.read_filter())
                continue
            right_reader_elements.extend(self.read_block(var_classes))
        return [Union(GroupPattern(tuple(left_elements)), GroupPattern(tuple(right_reader_elements)))]

    def read_filter(self) -> Filter:
        self.expect("FILTER")
        self.expect("regex")
        self.expect("(")
        var = self.var()
        self.expect(",")
        pattern = self.string()
        self.expect(",")
        flags = self.string()
        self.expect(")")
        return Filter(var, pattern, flags)


def read_query(text: str) -> Select:
    """Parse serialized query text back into an AST."""
    reader = _Reader(_tokenize_query(text))
    select = reader.read_select()
    if reader.peek() is not None:
        raise QueryReadError(f"trailing content: {reader.peek()!r}")
    return select
