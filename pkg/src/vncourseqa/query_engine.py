"""Query evaluation over a graph snapshot.

``evaluate`` matches triple patterns left to right, extending variable
bindings with index lookups, applies regex filters, unions branch solutions,
and joins nested sub-selects on their projection variable. Generated queries
are small and machine-shaped, so there is deliberately no query planner.

``brute_force_evaluate`` is the independent test oracle: it enumerates
variable assignments over all graph terms and keeps those satisfying every
pattern. Assignments are enumerated depth-first and a prefix is abandoned as
soon as an already-ground pattern fails, which rejects exactly the
assignments a full product scan would reject, just sooner.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .kb import Graph, Literal, Term
from .query_builder import (
    Filter,
    GroupPattern,
    ProjectCount,
    Select,
    SubSelect,
    TriplePattern,
    Union,
)

BRUTE_FORCE_MAX_TRIPLES = 500
BRUTE_FORCE_MAX_VARS = 8


class EngineError(ValueError):
    pass


class UnboundProjection(EngineError):
    pass


class UnsupportedPattern(EngineError):
    pass


class GuardExceeded(EngineError):
    pass


@dataclass(frozen=True)
class ResultSet:
    """Either distinct projected values in canonical order, or a count."""

    kind: str  # "rows" | "count"
    rows: tuple[str, ...] = ()
    count: int = 0

    @staticmethod
    def from_rows(values) -> "ResultSet":
        distinct = set(values)
        ordered = sorted(distinct, key=lambda v: (unicodedata.normalize("NFC", v), v))
        return ResultSet(kind="rows", rows=tuple(ordered))

    @staticmethod
    def from_count(count: int) -> "ResultSet":
        return ResultSet(kind="count", count=count)


_META = set(".^$*+?()[]{}|")


def _check_filter(filt: Filter) -> None:
    """Only generated patterns are allowed: an escaped literal, optionally
    anchored. Anything else (user-supplied regex) is rejected."""
    if filt.flags not in ("", "i"):
        raise UnsupportedPattern(f"unsupported regex flags {filt.flags!r}")
    body = filt.pattern
    if body.startswith("^"):
        body = body[1:]
    if body.endswith("$") and not body.endswith("\\$"):
        body = body[:-1]
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body):
                raise UnsupportedPattern("trailing backslash in filter pattern")
            i += 2
            continue
        if ch in _META:
            raise UnsupportedPattern(f"raw metacharacter {ch!r} in filter pattern")
        i += 1


def _filter_matches(filt: Filter, term: Term) -> bool:
    if not isinstance(term, Literal):
        return False
    flags = re.IGNORECASE if "i" in filt.flags else 0
    value = unicodedata.normalize("NFC", term.value)
    return re.search(unicodedata.normalize("NFC", filt.pattern), value, flags) is not None


def _class_ok(var: str, term: Term, var_classes: dict[str, str], graph: Graph) -> bool:
    cls = var_classes.get(var)
    if cls is None:
        return True
    if isinstance(term, Literal):
        return False
    return graph.entity_class.get(term) == cls


def _validate_select(select: Select) -> None:
    def walk(sel: Select) -> None:
        for el in _iter_elements(sel.where):
            if isinstance(el, Filter):
                _check_filter(el)
            elif isinstance(el, SubSelect):
                walk(el.select)

    walk(select)


def _iter_elements(group: GroupPattern):
    for el in group.elements:
        yield el
        if isinstance(el, Union):
            yield from _iter_elements(el.left)
            yield from _iter_elements(el.right)


def _group_binds(group: GroupPattern, var: str) -> bool:
    for el in group.elements:
        if isinstance(el, TriplePattern) and var in (el.s, el.o):
            return True
        if isinstance(el, SubSelect) and _projection_var(el.select) == var:
            return True
        if isinstance(el, Union) and _group_binds(el.left, var) and _group_binds(el.right, var):
            return True
    return False


def _projection_var(select: Select) -> str:
    return select.projection.var


# -- index-driven evaluation ---------------------------------------------------


def _extend_pattern(
    pattern: TriplePattern,
    bindings: list[dict[str, Term]],
    graph: Graph,
    var_classes: dict[str, str],
) -> list[dict[str, Term]]:
    out: list[dict[str, Term]] = []
    for binding in bindings:
        s_bound = binding.get(pattern.s)
        o_bound = binding.get(pattern.o)
        if s_bound is not None and isinstance(s_bound, Literal):
            continue
        if s_bound is not None and o_bound is not None:
            if o_bound in graph.objects(pattern.p, s_bound):
                out.append(binding)
            continue
        if s_bound is not None:
            for obj in graph.objects(pattern.p, s_bound):
                if _class_ok(pattern.o, obj, var_classes, graph):
                    new = dict(binding)
                    new[pattern.o] = obj
                    out.append(new)
            continue
        if o_bound is not None:
            for subj in graph.subjects(pattern.p, o_bound):
                if _class_ok(pattern.s, subj, var_classes, graph):
                    new = dict(binding)
                    new[pattern.s] = subj
                    out.append(new)
            continue
        for subj, obj in graph.pairs(pattern.p):
            if not _class_ok(pattern.s, subj, var_classes, graph):
                continue
            if not _class_ok(pattern.o, obj, var_classes, graph):
                continue
            if pattern.s == pattern.o and subj != obj:
                continue
            new = dict(binding)
            new[pattern.s] = subj
            new[pattern.o] = obj
            out.append(new)
    return out


def _dedupe(bindings: list[dict[str, Term]]) -> list[dict[str, Term]]:
    seen = set()
    out = []
    for binding in bindings:
        key = frozenset(binding.items())
        if key not in seen:
            seen.add(key)
            out.append(binding)
    return out


def _eval_group(
    group: GroupPattern,
    graph: Graph,
    var_classes: dict[str, str],
    bindings: list[dict[str, Term]],
) -> list[dict[str, Term]]:
    current = bindings
    for el in group.elements:
        if not current:
            return []
        if isinstance(el, TriplePattern):
            current = _extend_pattern(el, current, graph, var_classes)
        elif isinstance(el, Filter):
            current = [b for b in current if el.var in b and _filter_matches(el, b[el.var])]
        elif isinstance(el, Union):
            left = _eval_group(el.left, graph, var_classes, current)
            right = _eval_group(el.right, graph, var_classes, current)
            current = _dedupe(left + right)
        elif isinstance(el, SubSelect):
            values = _select_terms(el.select, graph)
            join_var = _projection_var(el.select)
            joined: list[dict[str, Term]] = []
            for binding in current:
                bound = binding.get(join_var)
                if bound is not None:
                    if bound in values:
                        joined.append(binding)
                else:
                    for value in sorted(values, key=repr):
                        new = dict(binding)
                        new[join_var] = value
                        joined.append(new)
            current = joined
        else:
            raise EngineError(f"cannot evaluate element {el!r}")
    return current


def _select_terms(select: Select, graph: Graph) -> set[Term]:
    """Distinct terms the select's projection variable takes."""
    var = _projection_var(select)
    if not _group_binds(select.where, var):
        raise UnboundProjection(f"projection variable ?{var} is never bound")
    solutions = _eval_group(select.where, graph, select.var_classes, [{}])
    return {b[var] for b in solutions if var in b}


def evaluate(select: Select, graph: Graph) -> ResultSet:
    """Evaluate a query AST against a graph snapshot."""
    _validate_select(select)
    terms = _select_terms(select, graph)
    if isinstance(select.projection, ProjectCount):
        return ResultSet.from_count(len(terms))
    values = []
    for term in terms:
        if not isinstance(term, Literal):
            raise EngineError(
                f"projection ?{select.projection.var} bound to entity {term!r}, not a literal"
            )
        values.append(term.value)
    return ResultSet.from_rows(values)


# -- brute-force oracle ---------------------------------------------------------


def _collect_vars(group: GroupPattern) -> list[str]:
    """Variables of this group in first-mention order (unions included,
    sub-selects excluded: they are evaluated recursively)."""
    ordered: list[str] = []

    def add(var: str) -> None:
        if var not in ordered:
            ordered.append(var)

    def walk(g: GroupPattern) -> None:
        for el in g.elements:
            if isinstance(el, TriplePattern):
                add(el.s)
                add(el.o)
            elif isinstance(el, Filter):
                add(el.var)
            elif isinstance(el, Union):
                walk(el.left)
                walk(el.right)
            elif isinstance(el, SubSelect):
                add(_projection_var(el.select))

    walk(group)
    return ordered


def _ground_ok(
    el,
    assignment: dict[str, Term],
    graph: Graph,
    sub_values: dict[int, set[Term]],
) -> bool | None:
    """Check one element; None means not fully ground yet."""
    if isinstance(el, TriplePattern):
        s = assignment.get(el.s)
        o = assignment.get(el.o)
        if s is None or o is None:
            return None
        if isinstance(s, Literal):
            return False
        return (s, o) in graph.pairs(el.p)
    if isinstance(el, Filter):
        value = assignment.get(el.var)
        if value is None:
            return None
        return _filter_matches(el, value)
    if isinstance(el, SubSelect):
        value = assignment.get(_projection_var(el.select))
        if value is None:
            return None
        return value in sub_values[id(el)]
    if isinstance(el, Union):
        left = _branch_ok(el.left, assignment, graph, sub_values)
        right = _branch_ok(el.right, assignment, graph, sub_values)
        if left is None or right is None:
            return None
        return left or right
    raise EngineError(f"cannot check element {el!r}")


def _branch_ok(
    group: GroupPattern,
    assignment: dict[str, Term],
    graph: Graph,
    sub_values: dict[int, set[Term]],
) -> bool | None:
    result = True
    for el in group.elements:
        ok = _ground_ok(el, assignment, graph, sub_values)
        if ok is None:
            return None
        result = result and ok
    return result


def _bf_solutions(select: Select, graph: Graph) -> list[dict[str, Term]]:
    group = select.where
    variables = _collect_vars(group)
    if len(variables) > BRUTE_FORCE_MAX_VARS:
        raise GuardExceeded(
            f"{len(variables)} variables in one group exceeds {BRUTE_FORCE_MAX_VARS}"
        )
    sub_values: dict[int, set[Term]] = {}
    for el in _iter_elements(group):
        if isinstance(el, SubSelect):
            sub_values[id(el)] = set(_bf_select_terms(el.select, graph))

    terms: list[Term] = sorted(graph.entity_class) + sorted(
        graph.literals(), key=lambda l: l.value
    )
    elements = list(group.elements)
    solutions: list[dict[str, Term]] = []

    def grounded_now(assignment: dict[str, Term], var: str) -> bool:
        # newly assigned var: re-check every element that just became ground
        if not _class_ok(var, assignment[var], select.var_classes, graph):
            return False
        for el in elements:
            ok = _ground_ok(el, assignment, graph, sub_values)
            if ok is False:
                return False
        return True

    def descend(index: int, assignment: dict[str, Term]) -> None:
        if index == len(variables):
            if _branch_ok(group, assignment, graph, sub_values):
                solutions.append(dict(assignment))
            return
        var = variables[index]
        for term in terms:
            assignment[var] = term
            if grounded_now(assignment, var):
                descend(index + 1, assignment)
        del assignment[var]

    descend(0, {})
    return solutions


def _bf_select_terms(select: Select, graph: Graph) -> set[Term]:
    var = _projection_var(select)
    if not _group_binds(select.where, var):
        raise UnboundProjection(f"projection variable ?{var} is never bound")
    return {b[var] for b in _bf_solutions(select, graph) if var in b}


def brute_force_evaluate(select: Select, graph: Graph) -> ResultSet:
    """Oracle evaluation by exhaustive assignment enumeration.

    Guarded: refuses graphs over ``BRUTE_FORCE_MAX_TRIPLES`` triples or groups
    with more than ``BRUTE_FORCE_MAX_VARS`` variables.
    """
    if len(graph.triples) > BRUTE_FORCE_MAX_TRIPLES:
        raise GuardExceeded(
            f"{len(graph.triples)} triples exceeds {BRUTE_FORCE_MAX_TRIPLES}"
        )
    _validate_select(select)
    terms = _bf_select_terms(select, graph)
    if isinstance(select.projection, ProjectCount):
        return ResultSet.from_count(len(terms))
    values = []
    for term in terms:
        if not isinstance(term, Literal):
            raise EngineError(
                f"projection ?{select.projection.var} bound to entity {term!r}, not a literal"
            )
        values.append(term.value)
    return ResultSet.from_rows(values)
