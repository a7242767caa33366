"""Parser for the concrete formula syntax.

Precedence from tightest: ``!`` and the unary temporal operators, ``&``,
``|``, ``->``; the binary connectives associate to the right.  A language
annotation is written in brackets right after the operator keyword::

    [NAME]  [kind:NAME]  [~NAME]  [re:REGEX]  [Sigma]  [Sigma*]  [step:...]
"""
from __future__ import annotations

import re

from ..errors import ValidationError
from ..logic import (FF, SIGMA, SIGMA_STAR, TT, And, Implies, Lang, Not, Or, Prop, Release, Unary,
                     Until, default_lang)

KINDS = ("dfa", "nfa", "vpa", "dvpa", "pda", "dpda")
KEYWORDS = {"E", "A", "U", "R", "tt", "ff", "EF", "AF", "EG", "AG", "EX", "AX"}
_IDENT = re.compile(r"[A-Za-z0-9_]+")
_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.replace("\r\n", "\n").split("\n"))


class _Parser:
    def __init__(self, text):
        self.text = _strip_comments(text)
        self.tokens = self._tokenize()
        self.i = 0
        self.positions = []  # (lang, offset) for later resolution

    def where(self, offset):
        line = self.text.count("\n", 0, offset) + 1
        column = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, column

    def error(self, message, offset):
        return ValidationError(message, *self.where(offset))

    def _tokenize(self):
        out = []
        text, i = self.text, 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif text.startswith("->", i):
                out.append(("->", i))
                i += 2
            elif c in "()!&|":
                out.append((c, i))
                i += 1
            elif c == "[":
                end = text.find("]", i)
                if end < 0:
                    raise self.error("unterminated language annotation", i)
                out.append(("lang", i, text[i + 1:end]))
                i = end + 1
            else:
                m = _IDENT.match(text, i)
                if not m:
                    raise self.error(f"unexpected character {c!r}", i)
                out.append(("kw" if m.group() in KEYWORDS else "id", i, m.group()))
                i = m.end()
        out.append(("end", len(text)))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, what=None):
        tok = self.tokens[self.i]
        if kind is not None and (tok[0] != kind or (what is not None and tok[2] != what)):
            expected = what or kind
            raise self.error(f"expected {expected!r}, found {self.describe(tok)}", tok[1])
        self.i += 1
        return tok

    @staticmethod
    def describe(tok):
        if tok[0] == "end":
            return "end of input"
        if tok[0] in ("kw", "id"):
            return repr(tok[2])
        if tok[0] == "lang":
            return "a language annotation"
        return repr(tok[0])

    def is_kw(self, *words):
        tok = self.peek()
        return tok[0] == "kw" and tok[2] in words

    # grammar ---------------------------------------------------------------

    def formula(self):
        f = self.implication()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {self.describe(tok)}", tok[1])
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        if self.peek()[0] == "|":
            self.take()
            return Or(left, self.disjunction())
        return left

    def conjunction(self):
        left = self.unary()
        if self.peek()[0] == "&":
            self.take()
            return And(left, self.conjunction())
        return left

    def unary(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind == "(":
            self.take()
            f = self.implication()
            self.take(")")
            return f
        if kind == "id":
            self.take()
            return Prop(tok[2])
        if kind == "kw":
            word = tok[2]
            if word in ("tt", "ff"):
                self.take()
                return TT if word == "tt" else FF
            if word in ("E", "A"):
                return self.binary_temporal()
            if len(word) == 2 and word not in ("tt", "ff"):
                self.take()
                probe = Unary(word, SIGMA_STAR, TT)
                lang = self.lang(default_lang(probe))
                return Unary(word, lang, self.unary())
        raise self.error(f"expected a formula, found {self.describe(tok)}", tok[1])

    def binary_temporal(self):
        path = self.take()[2]
        self.take("(")
        left = self.implication()
        tok = self.peek()
        if not self.is_kw("U", "R"):
            raise self.error(f"expected 'U' or 'R', found {self.describe(tok)}", tok[1])
        self.take()
        lang = self.lang(SIGMA_STAR)
        right = self.implication()
        self.take(")")
        cls = Until if tok[2] == "U" else Release
        return cls(path, left, lang, right)

    def lang(self, default):
        tok = self.peek()
        if tok[0] != "lang":
            return default
        self.take()
        lang = self.lang_body(tok[2].strip(), tok[1] + 1)
        self.positions.append((lang, tok[1]))
        return lang

    def lang_body(self, body, offset):
        if body == "Sigma":
            return SIGMA
        if body == "Sigma*":
            return SIGMA_STAR
        if body.startswith("re:"):
            pattern = body[3:].strip()
            if not pattern:
                raise self.error("empty regular expression", offset)
            return Lang("regex", pattern)
        if body.startswith("step:"):
            return Lang("step", inner=self.lang_body(body[5:].strip(), offset + 5))
        if body.startswith("~"):
            name = body[1:].strip()
            if not _NAME.match(name):
                raise self.error(f"malformed automaton name {name!r}", offset)
            return Lang("complement", name)
        expect = None
        if ":" in body:
            expect, body = (x.strip() for x in body.split(":", 1))
            if expect not in KINDS:
                raise self.error(f"unknown automaton kind {expect!r}", offset)
        if not _NAME.match(body):
            raise self.error(f"malformed automaton name {body!r}", offset)
        return Lang("name", body, expect=expect)


def parse_formula(text: str, env=None):
    """Parse ``text``; with an environment, every annotation is resolved
    now so unknown names and kind violations are reported with a position."""
    parser = _Parser(text)
    f = parser.formula()
    if env is not None:
        for lang, offset in parser.positions:
            try:
                env.resolve(lang)
            except ValidationError as err:
                at = offset
                if lang.kind == "regex" and err.column is not None:
                    # point into the pattern itself
                    at = parser.text.index(lang.text, offset) + err.column - 1
                raise parser.error(err.message, at) from None
    return f
