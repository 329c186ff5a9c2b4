"""Lowering parse trees to query intents.

A :class:`QueryIntent` is the semantic middle layer between a parse tree and
a query: the question target (what kind of thing is asked for) plus constraint
slots. One slot may carry several values joined by "và"/"hoặc"; decomposition
splits such an intent into single-valued intents to be joined (and) or
unioned (or) by the query builder.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import normalize
from .parser import ParseNode, ParseTree

AUTHOR = "Author"
PUBLISHER = "Publisher"
YEAR_OF_WRITING = "YearOfWriting"
YEAR_OF_PUBLISHING = "YearOfPublishing"
SUBJECT = "Subject"
BOOK_LIST = "BookList"
PLACE_OF_PUBLICATION = "PlaceOfPublication"
PLACE_OF_PUBLISHER = "PlaceOfPublisher"
PRICE = "Price"
COUNT_BOOKS = "CountBooks"

TARGETS = frozenset(
    {
        AUTHOR,
        PUBLISHER,
        YEAR_OF_WRITING,
        YEAR_OF_PUBLISHING,
        SUBJECT,
        BOOK_LIST,
        PLACE_OF_PUBLICATION,
        PLACE_OF_PUBLISHER,
        PRICE,
        COUNT_BOOKS,
    }
)

SLOT_ORDER = ("title", "author", "publisher", "year", "subject", "place")

# The slot a target answers; it must never double as a constraint, so an
# asserted value of that kind (confirmation questions) is not kept.
_TARGET_OWN_SLOT = {
    AUTHOR: "author",
    PUBLISHER: "publisher",
    YEAR_OF_WRITING: "year",
    YEAR_OF_PUBLISHING: "year",
    SUBJECT: "subject",
    BOOK_LIST: "title",
    PLACE_OF_PUBLICATION: "place",
    PLACE_OF_PUBLISHER: "place",
    PRICE: None,
    COUNT_BOOKS: None,
}

_AND_WORDS = {"và", "cùng"}

AND = "and"
OR = "or"


class IntentError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


class MixedConnective(IntentError):
    pass


class MultipleMultiSlots(IntentError):
    pass


@dataclass(frozen=True)
class SlotValue:
    values: tuple[str, ...]
    connective: str | None = None  # None for a single value, else "and" / "or"

    def __post_init__(self):
        if self.connective is None and len(self.values) != 1:
            raise IntentError("single slot value must hold exactly one literal")
        if self.connective is not None and len(self.values) < 2:
            raise IntentError("multi slot value needs at least two literals")

    @property
    def is_multi(self) -> bool:
        return self.connective is not None

    @staticmethod
    def single(value: str) -> "SlotValue":
        return SlotValue((value,))

    @staticmethod
    def multi(connective: str, values: list[str] | tuple[str, ...]) -> "SlotValue":
        return SlotValue(tuple(values), connective)


@dataclass(frozen=True)
class QueryIntent:
    target: str
    slots: dict[str, SlotValue]

    def multi_slot(self) -> str | None:
        for name, value in self.slots.items():
            if value.is_multi:
                return name
        return None

    def render(self) -> str:
        parts = []
        for name in SLOT_ORDER:
            value = self.slots.get(name)
            if value is None:
                continue
            if value.is_multi:
                joined = f" {value.connective} ".join(f'"{v}"' for v in value.values)
                parts.append(f"{name}=[{joined}]")
            else:
                parts.append(f'{name}="{value.values[0]}"')
        return f"{self.target}({', '.join(parts)})"


def parse_rule_targets(text: str) -> dict[str, str]:
    """Parse the rule-to-target table: ``rule_id<TAB>target`` lines."""
    targets: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise IntentError(f"rule-target line {lineno}: expected 'rule<TAB>target'")
        rule_id, target = parts[0].strip(), parts[1].strip()
        if target not in TARGETS:
            raise IntentError(f"rule-target line {lineno}: unknown target {target!r}")
        if rule_id in targets:
            raise IntentError(f"rule-target line {lineno}: duplicate rule {rule_id!r}")
        targets[rule_id] = target
    return targets


def _literal_value(node: ParseNode) -> str | None:
    """The (case-preserving) value carried by the first literal leaf below."""
    for leaf in node.leaves():
        if leaf.kind is not None:
            return leaf.token.surface
    return None


def _token_index(tree: ParseTree, node: ParseNode) -> int | None:
    for index, token in enumerate(tree.tokens):
        if node.token is token:
            return index
    return None


def build_intent(tree: ParseTree, rule_targets: dict[str, str] | None = None) -> QueryIntent:
    """Map a parse tree to its target and constraint slots."""
    if rule_targets is None:
        from .resources import default_rule_targets

        rule_targets = default_rule_targets()
    target = rule_targets.get(tree.rule_id)
    if target is None:
        raise IntentError(f"no target mapping for rule {tree.rule_id!r}")

    titles: list[str] = []
    connectives: list[tuple[str, int | None]] = []
    single_slots: dict[str, str] = {}

    def put_single(name: str, value: str, node: ParseNode) -> None:
        existing = single_slots.get(name)
        if existing is not None and normalize(existing) != normalize(value):
            raise MultipleMultiSlots(
                f"slot {name!r} is constrained twice ({existing!r}, {value!r})",
                position=_token_index(tree, node),
            )
        single_slots.setdefault(name, value)

    def walk(node: ParseNode) -> None:
        label = node.label
        if label == "book":
            value = _literal_value(node)
            if value is not None:
                titles.append(value)
            return
        if label == "conjunction":
            word = node.token.normalized
            connectives.append((AND if word in _AND_WORDS else OR, _token_index(tree, node)))
            return
        if label == "time_phrase":
            value = _literal_value(node)
            if value is not None:
                put_single("year", value, node)
            return
        if label in ("author", "of_author", "by_author"):
            value = _literal_value(node)
            if value is not None:
                put_single("author", value, node)
            return
        if label in ("publisher", "by_publisher"):
            value = _literal_value(node)
            if value is not None:
                put_single("publisher", value, node)
            return
        if label == "subject":
            value = _literal_value(node)
            if value is not None:
                put_single("subject", value, node)
            return
        for child in node.children:
            walk(child)

    for child in tree.root.children:
        walk(child)

    slots: dict[str, SlotValue] = {}
    if titles:
        # distinct after normalization; a repeated title is one constraint
        seen: dict[str, str] = {}
        for value in titles:
            seen.setdefault(normalize(value), value)
        distinct = list(seen.values())
        kinds = {c for c, _ in connectives}
        if len(kinds) > 1:
            position = next(p for c, p in connectives if c == OR)
            raise MixedConnective(
                'both "và" and "hoặc" join one slot', position=position
            )
        if len(distinct) == 1:
            slots["title"] = SlotValue.single(distinct[0])
        else:
            connective = kinds.pop() if kinds else AND
            slots["title"] = SlotValue.multi(connective, distinct)
    for name, value in single_slots.items():
        slots[name] = SlotValue.single(value)

    own = _TARGET_OWN_SLOT[target]
    if own is not None:
        slots.pop(own, None)

    multis = [name for name, value in slots.items() if value.is_multi]
    if len(multis) > 1:
        raise MultipleMultiSlots(f"slots {multis} are all multi-valued")
    ordered = {name: slots[name] for name in SLOT_ORDER if name in slots}
    return QueryIntent(target=target, slots=ordered)


@dataclass(frozen=True)
class DecomposedIntent:
    """A multi-valued intent split into single-valued ones.

    ``mode`` is "single" (no multi slot), "and" (intents to be joined by
    nesting) or "or" (intents to be unioned).
    """

    mode: str
    intents: tuple[QueryIntent, ...]

    def render(self) -> str:
        sep = {"single": " ", "and": " AND ", "or": " OR "}[self.mode]
        return sep.join(i.render() for i in self.intents)


def decompose(intent: QueryIntent) -> DecomposedIntent:
    """Split the (at most one) multi-valued slot into per-value intents."""
    multi_name = intent.multi_slot()
    if multi_name is None:
        return DecomposedIntent("single", (intent,))
    multi = intent.slots[multi_name]
    parts = []
    for value in multi.values:
        slots = dict(intent.slots)
        slots[multi_name] = SlotValue.single(value)
        parts.append(QueryIntent(target=intent.target, slots=slots))
    mode = AND if multi.connective == AND else OR
    return DecomposedIntent(mode, tuple(parts))
