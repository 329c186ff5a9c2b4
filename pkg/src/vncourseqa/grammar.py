"""Question grammar: rule table loading and the EBNF-style rule notation.

Rules live in a checked-in description file (``data/grammar.ebnf``) so the
rule inventory can be audited line by line. The notation supports symbol
references ``<name>``, optional groups ``[ ... ]``, repeated groups
``{ ... }``, alternatives ``|`` and quoted punctuation literals (``"?"``,
``","``). Rule names start with ``Q``; every other production defines a
composite sub-phrase shared by the rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .lexicon import LITERAL_KINDS, TERMINAL_CATEGORIES


class GrammarError(ValueError):
    """Raised for malformed or inconsistent grammar descriptions."""


@dataclass(frozen=True)
class Ref:
    """Reference to a terminal category, literal kind, or sub-phrase."""

    name: str


@dataclass(frozen=True)
class Lit:
    """A punctuation literal such as the final question mark."""

    text: str


@dataclass(frozen=True)
class Opt:
    items: tuple


@dataclass(frozen=True)
class Rep:
    items: tuple


Item = Ref | Lit | Opt | Rep


@dataclass(frozen=True)
class GrammarRule:
    id: str
    family: str
    body: tuple[Item, ...]


class Grammar:
    def __init__(
        self,
        rules: list[GrammarRule],
        subphrases: dict[str, tuple[tuple[Item, ...], ...]],
    ):
        self.rules = tuple(rules)
        self.subphrases = dict(subphrases)
        self._by_id = {r.id: r for r in rules}
        self._validate()

    def rule(self, rule_id: str) -> GrammarRule:
        return self._by_id[rule_id]

    def rule_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rules)

    def _validate(self) -> None:
        if len(self._by_id) != len(self.rules):
            raise GrammarError("duplicate rule ids")

        def check_items(items: tuple, where: str) -> None:
            for item in items:
                if isinstance(item, Ref):
                    known = (
                        item.name in TERMINAL_CATEGORIES
                        or item.name in LITERAL_KINDS
                        or item.name in self.subphrases
                    )
                    if not known:
                        raise GrammarError(f"{where}: unknown symbol <{item.name}>")
                elif isinstance(item, (Opt, Rep)):
                    check_items(item.items, where)
                elif isinstance(item, Lit):
                    if item.text not in {"?", ","}:
                        raise GrammarError(f"{where}: unsupported literal {item.text!r}")

        for rule in self.rules:
            check_items(rule.body, rule.id)
            last = rule.body[-1]
            if not (isinstance(last, Lit) and last.text == "?"):
                raise GrammarError(f"{rule.id}: rule must end with the terminal '?'")
        for name, alts in self.subphrases.items():
            for alt in alts:
                check_items(alt, name)


def _tokenize_notation(text: str) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "[]{}|":
            tokens.append(ch)
            i += 1
        elif ch == "<":
            close = text.find(">", i)
            if close == -1:
                raise GrammarError(f"unclosed '<' in {text!r}")
            tokens.append(text[i : close + 1])
            i = close + 1
        elif ch == '"':
            close = text.find('"', i + 1)
            if close == -1:
                raise GrammarError(f"unclosed '\"' in {text!r}")
            tokens.append(text[i : close + 1])
            i = close + 1
        else:
            raise GrammarError(f"unexpected character {ch!r} in {text!r}")
    return tokens


def _parse_seq(tokens: list[str], pos: int, stop: set[str]) -> tuple[tuple[Item, ...], int]:
    items: list[Item] = []
    while pos < len(tokens) and tokens[pos] not in stop:
        tok = tokens[pos]
        if tok == "[":
            inner, pos = _parse_seq(tokens, pos + 1, {"]"})
            if pos >= len(tokens) or tokens[pos] != "]":
                raise GrammarError("unclosed '['")
            items.append(Opt(inner))
            pos += 1
        elif tok == "{":
            inner, pos = _parse_seq(tokens, pos + 1, {"}"})
            if pos >= len(tokens) or tokens[pos] != "}":
                raise GrammarError("unclosed '{'")
            items.append(Rep(inner))
            pos += 1
        elif tok.startswith("<"):
            items.append(Ref(tok[1:-1]))
            pos += 1
        elif tok.startswith('"'):
            items.append(Lit(tok[1:-1]))
            pos += 1
        else:
            raise GrammarError(f"unexpected token {tok!r}")
    if not items:
        raise GrammarError("empty symbol sequence")
    return tuple(items), pos


def parse_notation(body: str) -> tuple[tuple[Item, ...], ...]:
    """Parse one production body into its alternatives."""
    tokens = _tokenize_notation(body)
    alternatives: list[tuple[Item, ...]] = []
    pos = 0
    while True:
        seq, pos = _parse_seq(tokens, pos, {"|"})
        alternatives.append(seq)
        if pos >= len(tokens):
            break
        pos += 1  # skip '|'
    return tuple(alternatives)


def load_grammar(text: str) -> Grammar:
    """Load a grammar description: ``name = body`` lines, ``#`` comments."""
    rules: list[GrammarRule] = []
    subphrases: dict[str, tuple[tuple[Item, ...], ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GrammarError(f"line {lineno}: expected 'name = body'")
        name, body = line.split("=", 1)
        name = name.strip()
        try:
            alternatives = parse_notation(body)
        except GrammarError as exc:
            raise GrammarError(f"line {lineno}: {exc}") from exc
        if name.startswith("Q"):
            if len(alternatives) != 1:
                raise GrammarError(f"line {lineno}: rules cannot have alternatives")
            family = name.split(".", 1)[0]
            rules.append(GrammarRule(id=name, family=family, body=alternatives[0]))
        else:
            if name in subphrases:
                raise GrammarError(f"line {lineno}: duplicate production {name!r}")
            subphrases[name] = alternatives
    return Grammar(rules, subphrases)


def load_grammar_file(path: str | Path) -> Grammar:
    return load_grammar(Path(path).read_text(encoding="utf-8"))
