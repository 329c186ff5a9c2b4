"""Text normalization and lexicon-driven segmentation of Vietnamese questions.

The lexicon maps surface forms (possibly multi-word) to grammar terminal
categories. Segmentation is deterministic longest-match, left to right;
anything the lexicon does not know becomes a candidate literal token whose
kind (title, person name, ...) is resolved later by the question parser.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

# Terminal categories the question grammar may reference. Lexicon files are
# validated against this registry so a typo in a category name fails at load
# time, not at parse time.
TERMINAL_CATEGORIES = frozenset(
    {
        "what_author",
        "what_publisher",
        "what_time",
        "what_place",
        "what_price",
        "what_subject",
        "how_many",
        "interrogative1",
        "interrogative2",
        "interrogative3",
        "interrogative4",
        "vperfect",
        "vpassive",
        "agent_marker",
        "conjunction",
        "possessive",
        "plural",
        "verb_write",
        "verb_publish",
        "verb_be",
        "verb_have",
        "verb_locate",
        "verb_buy",
        "verb_cost",
        "book_type",
        "prep_time",
        "year_word",
        "in_elib",
        "is_of",
        "creator",
        "price",
        "field",
        "author_word",
        "publisher_word",
    }
)

# Token kinds that carry a value rather than a grammar word. TITLE doubles as
# the default kind for any unknown word run; the parser re-labels it from the
# grammar position it fills.
LITERAL_KINDS = frozenset(
    {"TITLE", "PERSON", "PUBLISHER_NAME", "SUBJECT_NAME", "PLACE_NAME", "YEAR", "NUMBER"}
)
PUNCT = "PUNCT"

_WS_RE = re.compile(r"\s+")
_PUNCT_CHARS = {"?", ",", ".", "!", ";", ":"}


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def normalize(text: str) -> str:
    """NFC-normalize, lowercase, collapse whitespace runs, trim. Idempotent."""
    text = unicodedata.normalize("NFC", text).lower()
    return _WS_RE.sub(" ", text).strip()


def _fold_spaces(text: str) -> str:
    """Like :func:`normalize` but keeps the original letter case."""
    return _WS_RE.sub(" ", unicodedata.normalize("NFC", text)).strip()


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    category: str


@dataclass(frozen=True)
class Token:
    """One segmented unit of a question.

    ``categories`` holds every terminal category the surface maps to (a word
    like "tác giả" can be both an author marker and a creator word); the
    first one is the primary ``category``. ``span`` indexes the normalized
    question text.
    """

    categories: tuple[str, ...]
    surface: str
    normalized: str
    span: tuple[int, int]
    quoted: bool = False

    @property
    def category(self) -> str:
        return self.categories[0]

    def has_category(self, name: str) -> bool:
        return name in self.categories

    @property
    def is_literal_candidate(self) -> bool:
        """True for tokens usable as a title/name/subject/place value."""
        return self.category == "TITLE"

    @property
    def is_punct(self) -> bool:
        return self.category == PUNCT


class Lexicon:
    """Immutable surface-to-category table indexed for longest-match lookup."""

    def __init__(self, entries: Iterable[LexiconEntry] = ()):
        self._entries: list[LexiconEntry] = []
        self._by_surface: dict[str, list[str]] = {}
        self._by_first_word: dict[str, list[str]] = {}
        for entry in entries:
            self._add(entry)

    def _add(self, entry: LexiconEntry) -> None:
        if not entry.surface or entry.surface != normalize(entry.surface):
            raise LexiconError(f"surface not normalized: {entry.surface!r}")
        if entry.category not in TERMINAL_CATEGORIES:
            raise LexiconError(f"unknown category: {entry.category!r}")
        cats = self._by_surface.setdefault(entry.surface, [])
        if entry.category in cats:
            raise LexiconError(
                f"duplicate entry ({entry.surface!r}, {entry.category!r})"
            )
        cats.append(entry.category)
        self._entries.append(entry)
        first = entry.surface.split(" ", 1)[0]
        surfaces = self._by_first_word.setdefault(first, [])
        if entry.surface not in surfaces:
            surfaces.append(entry.surface)
            # longest surface first so segmentation can stop at the first hit
            surfaces.sort(key=lambda s: (-len(s.split(" ")), s))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self._entries)

    def categories_of(self, surface: str) -> tuple[str, ...]:
        return tuple(self._by_surface.get(surface, ()))

    def surfaces(self) -> frozenset[str]:
        return frozenset(self._by_surface)

    def match_at(self, words: list[str], start: int) -> tuple[str, tuple[str, ...]] | None:
        """Longest multi-word surface matching ``words[start:]``, if any."""
        candidates = self._by_first_word.get(words[start])
        if not candidates:
            return None
        for surface in candidates:
            parts = surface.split(" ")
            if words[start : start + len(parts)] == parts:
                return surface, tuple(self._by_surface[surface])
        return None


def load_lexicon(source: str) -> Lexicon:
    """Parse lexicon text: one ``category<TAB>surface`` entry per line.

    Lines starting with ``#`` and blank lines are ignored. Surfaces are
    NFC-normalized and lowercased at load.
    """
    entries = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError("expected 'category<TAB>surface'", line=lineno)
        category, surface = parts[0].strip(), normalize(parts[1])
        if category not in TERMINAL_CATEGORIES:
            raise LexiconError(f"unknown category: {category!r}", line=lineno)
        if not surface:
            raise LexiconError("empty surface", line=lineno)
        entries.append(LexiconEntry(surface=surface, category=category))
    return Lexicon(entries)


def load_lexicon_file(path: str | Path) -> Lexicon:
    return load_lexicon(Path(path).read_text(encoding="utf-8"))


@dataclass
class _Unit:
    """One pre-token scanning unit: a word, a quoted span, or punctuation."""

    kind: str  # "word" | "quoted" | "punct"
    text: str  # case-preserving text (without quotes for quoted units)
    lower: str
    start: int
    end: int


def _scan_units(case_kept: str, lowered: str) -> list[_Unit]:
    units: list[_Unit] = []
    i, n = 0, len(case_kept)
    while i < n:
        ch = case_kept[i]
        if ch == " ":
            i += 1
            continue
        if ch == '"':
            close = case_kept.find('"', i + 1)
            if close == -1:  # unbalanced quote: treat as a plain word char
                close = n
                inner = case_kept[i + 1 : close]
                units.append(_Unit("word", inner, lowered[i + 1 : close], i, close))
                break
            units.append(
                _Unit("quoted", case_kept[i + 1 : close].strip(),
                      lowered[i + 1 : close].strip(), i, close + 1)
            )
            i = close + 1
            continue
        if ch in _PUNCT_CHARS:
            units.append(_Unit("punct", ch, ch, i, i + 1))
            i += 1
            continue
        j = i
        while j < n and case_kept[j] != " " and case_kept[j] not in _PUNCT_CHARS and case_kept[j] != '"':
            j += 1
        units.append(_Unit("word", case_kept[i:j], lowered[i:j], i, j))
        i = j
    return units


def _is_digit_run(word: str) -> bool:
    return word.isdigit()


def segment(question: str, lexicon: Lexicon) -> list[Token]:
    """Tokenize a question by longest-match lookup against the lexicon.

    Unknown word runs become candidate literal tokens (default kind TITLE),
    double-quoted spans become literal tokens verbatim, 3-4 digit runs become
    YEAR tokens, other digit runs NUMBER, and punctuation becomes PUNCT.
    """
    case_kept = _fold_spaces(question)
    lowered = case_kept.lower()
    if len(lowered) != len(case_kept):  # pathological case folding; drop case info
        case_kept = lowered
    units = _scan_units(case_kept, lowered)
    words = [u.lower if u.kind == "word" else "" for u in units]

    tokens: list[Token] = []
    i = 0
    while i < len(units):
        unit = units[i]
        if unit.kind == "punct":
            tokens.append(
                Token((PUNCT,), unit.text, unit.lower, (unit.start, unit.end))
            )
            i += 1
            continue
        if unit.kind == "quoted":
            tokens.append(
                Token(("TITLE",), unit.text, normalize(unit.lower),
                      (unit.start, unit.end), quoted=True)
            )
            i += 1
            continue
        match = lexicon.match_at(words, i)
        if match is not None:
            surface, categories = match
            span_words = len(surface.split(" "))
            start, end = units[i].start, units[i + span_words - 1].end
            tokens.append(
                Token(categories, case_kept[start:end], surface, (start, end))
            )
            i += span_words
            continue
        if _is_digit_run(unit.lower):
            kind = "YEAR" if 3 <= len(unit.lower) <= 4 else "NUMBER"
            tokens.append(
                Token((kind,), unit.text, unit.lower, (unit.start, unit.end))
            )
            i += 1
            continue
        # unknown run: extend until the next known word, digit run, quote or punct
        j = i + 1
        while (
            j < len(units)
            and units[j].kind == "word"
            and not _is_digit_run(units[j].lower)
            and lexicon.match_at(words, j) is None
        ):
            j += 1
        start, end = units[i].start, units[j - 1].end
        tokens.append(
            Token(("TITLE",), case_kept[start:end], lowered[start:end], (start, end))
        )
        i = j
    return tokens
