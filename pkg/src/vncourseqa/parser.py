"""Recursive-descent matching of token sequences against the question grammar.

Rules are tried in table order; within a rule, optional and repeated groups
match greedily and backtrack. The first rule that consumes the whole token
sequence wins, which makes parsing deterministic without an ambiguity search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .grammar import Grammar, GrammarRule, Item, Lit, Opt, Ref, Rep
from .lexicon import LITERAL_KINDS, PUNCT, Token


class NoParse(Exception):
    """No grammar rule derives the full token sequence.

    ``position`` is the index of the furthest token any rule failed at,
    which is the most useful single diagnostic for "question not analyzed".
    """

    def __init__(self, position: int, message: str | None = None):
        self.position = position
        super().__init__(message or f"no rule matches; furthest failure at token {position}")


@dataclass(frozen=True)
class ParseNode:
    label: str
    children: tuple["ParseNode", ...] = ()
    token: Token | None = None
    kind: str | None = None  # resolved literal kind for value leaves

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def leaves(self) -> Iterator["ParseNode"]:
        if self.is_leaf:
            yield self
        for child in self.children:
            yield from child.leaves()

    def find_all(self, label: str) -> Iterator["ParseNode"]:
        if self.label == label:
            yield self
        for child in self.children:
            yield from child.find_all(label)


@dataclass(frozen=True)
class ParseTree:
    rule_id: str
    root: ParseNode
    tokens: tuple[Token, ...]

    def leaf_tokens(self) -> tuple[Token, ...]:
        return tuple(n.token for n in self.root.leaves())


@dataclass
class _Cursor:
    tokens: tuple[Token, ...]
    furthest: int = 0

    def fail(self, pos: int) -> None:
        if pos > self.furthest:
            self.furthest = pos


def _match_token(symbol: str, token: Token) -> ParseNode | None:
    if symbol in LITERAL_KINDS:
        if symbol == "YEAR":
            if token.category == "YEAR":
                return ParseNode("YEAR", token=token, kind="YEAR")
            return None
        if symbol == "NUMBER":
            if token.category == "NUMBER":
                return ParseNode("NUMBER", token=token, kind="NUMBER")
            return None
        if token.is_literal_candidate:
            return ParseNode(symbol, token=token, kind=symbol)
        return None
    if token.has_category(symbol):
        return ParseNode(symbol, token=token)
    return None


class _Matcher:
    def __init__(self, grammar: Grammar, cursor: _Cursor):
        self.grammar = grammar
        self.cursor = cursor

    def match_seq(self, items: tuple[Item, ...], pos: int) -> Iterator[tuple[int, list[ParseNode]]]:
        if not items:
            yield pos, []
            return
        head, rest = items[0], items[1:]
        for new_pos, nodes in self.match_item(head, pos):
            for end_pos, rest_nodes in self.match_seq(rest, new_pos):
                yield end_pos, nodes + rest_nodes

    def match_item(self, item: Item, pos: int) -> Iterator[tuple[int, list[ParseNode]]]:
        tokens = self.cursor.tokens
        if isinstance(item, Ref):
            if item.name in self.grammar.subphrases:
                for alt in self.grammar.subphrases[item.name]:
                    for new_pos, nodes in self.match_seq(alt, pos):
                        yield new_pos, [ParseNode(item.name, children=tuple(nodes))]
                return
            if pos >= len(tokens):
                self.cursor.fail(pos)
                return
            node = _match_token(item.name, tokens[pos])
            if node is None:
                self.cursor.fail(pos)
                return
            yield pos + 1, [node]
            return
        if isinstance(item, Lit):
            if pos < len(tokens) and tokens[pos].is_punct and tokens[pos].surface == item.text:
                yield pos + 1, [ParseNode(PUNCT, token=tokens[pos])]
            else:
                self.cursor.fail(pos)
            return
        if isinstance(item, Opt):
            # greedy: prefer the filled branch, fall back to skipping
            yield from self.match_seq(item.items, pos)
            yield pos, []
            return
        if isinstance(item, Rep):
            for new_pos, nodes in self.match_seq(item.items, pos):
                if new_pos == pos:  # zero-width repetition would never terminate
                    continue
                for end_pos, more in self.match_item(item, new_pos):
                    yield end_pos, nodes + more
            yield pos, []
            return
        raise TypeError(f"unknown grammar item: {item!r}")


def parse(tokens: list[Token] | tuple[Token, ...], grammar: Grammar) -> ParseTree:
    """Return the parse tree of the first rule deriving all of ``tokens``."""
    toks = tuple(tokens)
    cursor = _Cursor(toks)
    matcher = _Matcher(grammar, cursor)
    for rule in grammar.rules:
        for end_pos, nodes in matcher.match_seq(rule.body, 0):
            if end_pos == len(toks):
                root = ParseNode(rule.id, children=tuple(nodes))
                return ParseTree(rule_id=rule.id, root=root, tokens=toks)
            cursor.fail(end_pos)
    raise NoParse(cursor.furthest)


def render_tree(tree: ParseTree) -> str:
    """Deterministic indented rendering, one line per node."""
    lines: list[str] = []

    def walk(node: ParseNode, depth: int) -> None:
        indent = "  " * depth
        if node.is_leaf:
            lines.append(f"{indent}{node.label}: {node.token.surface!r}")
        else:
            lines.append(f"{indent}{node.label}")
            for child in node.children:
                walk(child, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines)


def check_derivation(tree: ParseTree, grammar: Grammar) -> bool:
    """Re-derive the tree's leaf sequence from its rule.

    Independently verifies parser soundness: the recorded children must be a
    legal expansion of the rule body, and the leaves must reproduce the
    token sequence.
    """
    rule: GrammarRule = grammar.rule(tree.rule_id)
    if tree.leaf_tokens() != tree.tokens:
        return False

    def consume(items: tuple[Item, ...], nodes: tuple[ParseNode, ...], i: int) -> Iterator[int]:
        if not items:
            yield i
            return
        head, rest = items[0], items[1:]
        for j in consume_item(head, nodes, i):
            yield from consume(rest, nodes, j)

    def consume_item(item: Item, nodes: tuple[ParseNode, ...], i: int) -> Iterator[int]:
        if isinstance(item, Ref):
            if i >= len(nodes):
                return
            node = nodes[i]
            if item.name in grammar.subphrases:
                if node.label != item.name or node.is_leaf:
                    return
                if any(
                    j == len(node.children)
                    for alt in grammar.subphrases[item.name]
                    for j in consume(alt, node.children, 0)
                ):
                    yield i + 1
                return
            if item.name in LITERAL_KINDS:
                if node.kind == item.name:
                    yield i + 1
                return
            if node.label == item.name and node.is_leaf and node.token.has_category(item.name):
                yield i + 1
            return
        if isinstance(item, Lit):
            if i < len(nodes) and nodes[i].label == PUNCT and nodes[i].token.surface == item.text:
                yield i + 1
            return
        if isinstance(item, Opt):
            yield from consume(item.items, nodes, i)
            yield i
            return
        if isinstance(item, Rep):
            seen: set[int] = set()
            stack = [i]
            while stack:
                j = stack.pop()
                if j in seen:
                    continue
                seen.add(j)
                yield j
                for k in consume(item.items, nodes, j):
                    if k > j:
                        stack.append(k)
            return

    return any(j == len(tree.root.children) for j in consume(rule.body, tree.root.children, 0))
