"""Regular expressions over an action alphabet, compiled Thompson-style.

Grammar: alternation ``|`` binds loosest, then concatenation, then the
postfix operators ``*``, ``+``, ``?``.  ``.`` matches any letter and
parentheses group.  Letters are the alphabet's names; adjacent letters need no
separator and are split by longest match (so ``aa`` is two ``a``'s when
``aa`` itself is not a letter).  Whitespace is ignored.  ``()`` is the empty
word.
"""
from __future__ import annotations

from ..errors import ValidationError
from .finite import EPS, FiniteAutomaton

_SPECIAL = set("|*+?().")


def _tokenize(pattern, alphabet):
    by_length = sorted(alphabet, key=len, reverse=True)
    tokens = []
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SPECIAL:
            tokens.append((ch, i))
            i += 1
            continue
        for letter in by_length:
            if pattern.startswith(letter, i):
                tokens.append((("letter", letter), i))
                i += len(letter)
                break
        else:
            j = i
            while j < len(pattern) and not pattern[j].isspace() and pattern[j] not in _SPECIAL:
                j += 1
            raise ValidationError(f"undeclared letter in {pattern[i:j]!r}", line=1, column=i + 1)
    return tokens


class _Parser:
    def __init__(self, pattern, alphabet):
        self.pattern = pattern
        self.tokens = _tokenize(pattern, alphabet)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def column(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1] + 1
        return len(self.pattern) + 1

    def error(self, message):
        raise ValidationError(message, line=1, column=self.column())

    def parse(self):
        tree = self.alternation()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r}")
        return tree

    def alternation(self):
        branches = [self.concatenation()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.concatenation())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concatenation(self):
        parts = []
        while self.peek() not in (None, "|", ")"):
            parts.append(self.repetition())
        if not parts:
            return ("eps",)
        return parts[0] if len(parts) == 1 else ("cat", parts)

    def repetition(self):
        node = self.atom()
        while self.peek() in ("*", "+", "?"):
            node = (self.peek(), node)
            self.pos += 1
        return node

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.pos += 1
            node = self.alternation()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return node
        if tok == ".":
            self.pos += 1
            return ("any",)
        if isinstance(tok, tuple):
            self.pos += 1
            return tok
        if tok is None:
            self.error("unexpected end of pattern")
        self.error(f"unexpected {tok!r}")


def parse_regex(pattern: str, alphabet):
    """Parse ``pattern`` into a small tuple tree (exposed for tests)."""
    return _Parser(pattern, alphabet).parse()


def regex_to_nfa(pattern: str, alphabet, name=None) -> FiniteAutomaton:
    """Thompson construction: one fresh start/end pair per subexpression,
    glued with epsilon edges."""
    alphabet = frozenset(alphabet)
    tree = parse_regex(pattern, alphabet)
    edges = []
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"r{counter[0] - 1}"

    def build(node):
        start, end = fresh(), fresh()
        op = node[0]
        if op == "eps":
            edges.append((start, EPS, end))
        elif op == "letter":
            edges.append((start, node[1], end))
        elif op == "any":
            edges.extend((start, a, end) for a in sorted(alphabet))
        elif op == "cat":
            cur = start
            for part in node[1]:
                s, e = build(part)
                edges.append((cur, EPS, s))
                cur = e
            edges.append((cur, EPS, end))
        elif op == "alt":
            for part in node[1]:
                s, e = build(part)
                edges.append((start, EPS, s))
                edges.append((e, EPS, end))
        else:
            s, e = build(node[1])
            edges.append((start, EPS, s))
            edges.append((e, EPS, end))
            if op in ("*", "?"):
                edges.append((start, EPS, end))
            if op in ("*", "+"):
                edges.append((e, EPS, s))
        return start, end

    start, end = build(tree)
    states = {f"r{i}" for i in range(counter[0])}
    return FiniteAutomaton("nfa", states, alphabet, edges, start, {end},
                           name=name or f"re:{pattern}")
