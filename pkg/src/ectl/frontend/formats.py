"""Readers and writers for the ``.lts`` and ``.aut`` text formats.

Both formats are line oriented: ``#`` starts a comment, blank lines are
ignored, and every line is a directive followed by whitespace-separated
tokens.  Errors carry the 1-based line and column of the offending token.
"""
from __future__ import annotations

import re

from ..automata.finite import EPS, FiniteAutomaton
from ..automata.pushdown import PushdownWordAutomaton, VisiblyPushdownAutomaton
from ..errors import ValidationError
from ..lts import IDENT_RE, LabeledTransitionSystem

_TOKEN = re.compile(r"\S+")
# automaton tokens may carry the punctuation that derived names use
_AUT_TOKEN = re.compile(r"[^\s#]+\Z")


class _Line:
    def __init__(self, number, text):
        self.number = number
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]

    @property
    def directive(self):
        return self.tokens[0][0]

    @property
    def args(self):
        return self.tokens[1:]

    def error(self, message, index=0):
        column = self.tokens[index][1] if index < len(self.tokens) else None
        return ValidationError(message, self.number, column)


def _lines(text):
    if text.startswith("﻿"):
        text = text[1:]
    for number, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = _Line(number, raw.split("#", 1)[0])
        if line.tokens:
            yield line


def _ident(line, index, pattern=IDENT_RE):
    token = line.tokens[index][0]
    if not pattern.match(token):
        raise line.error(f"malformed identifier {token!r}", index)
    return token


def _all(line, pattern=IDENT_RE):
    return [_ident(line, i, pattern) for i in range(1, len(line.tokens))]


def _single(line, seen, pattern=IDENT_RE):
    if len(line.tokens) != 2:
        raise line.error(f"{line.directive} takes exactly one argument", min(2, len(line.tokens) - 1))
    if line.directive in seen:
        raise line.error(f"duplicate {line.directive} directive")
    seen.add(line.directive)
    return _ident(line, 1, pattern)


# --------------------------------------------------------------------------
# LTS

def parse_lts(text: str) -> LabeledTransitionSystem:
    name = "lts"
    actions, props, states, labeling = [], [], [], {}
    transitions, designated = [], []
    where = {}
    seen = set()
    for line in _lines(text):
        d = line.directive
        if d == "system":
            name = _single(line, seen)
        elif d == "actions":
            actions += _all(line)
        elif d == "props":
            props += _all(line)
        elif d == "state":
            state, labels = _state_line(line)
            if state in labeling:
                raise line.error(f"state {state!r} is declared twice", 1)
            states.append(state)
            labeling[state] = labels
            where[("state", state)] = (line, 1)
            for i, p in labels:
                where.setdefault(("prop", p), (line, i))
        elif d == "trans":
            if len(line.tokens) != 4:
                raise line.error("trans takes a source, an action and a target")
            s, a, t = _all(line)
            transitions.append((s, a, t))
            where.setdefault(("state", s), (line, 1))
            where.setdefault(("action", a), (line, 2))
            where.setdefault(("state", t), (line, 3))
        elif d == "init":
            for i in range(1, len(line.tokens)):
                designated.append(_ident(line, i))
                where.setdefault(("state", designated[-1]), (line, i))
        else:
            raise line.error(f"unknown directive {d!r}")
    declared_props = set(props)
    for s, labels in labeling.items():
        for i, p in labels:
            if p not in declared_props:
                line, col = where[("prop", p)]
                raise line.error(f"proposition {p!r} is not declared", col)
    declared_states, declared_actions = set(states), set(actions)
    for s, a, t in transitions:
        for kind, token in (("state", s), ("action", a), ("state", t)):
            ok = token in (declared_states if kind == "state" else declared_actions)
            if not ok:
                line, col = where[(kind, token)]
                raise line.error(f"{kind} {token!r} is not declared", col)
    for s in designated:
        if s not in declared_states:
            line, col = where[("state", s)]
            raise line.error(f"state {s!r} is not declared", col)
    return LabeledTransitionSystem(states, actions, transitions,
                                   {s: {p for _, p in v} for s, v in labeling.items()},
                                   designated=tuple(dict.fromkeys(designated)), name=name,
                                   props=props)


def _state_line(line):
    if len(line.tokens) < 2:
        raise line.error("state needs a name")
    state = _ident(line, 1)
    rest = line.tokens[2:]
    if not rest:
        return state, []
    # the label list is "[p q]", with brackets possibly glued to names
    first, last = rest[0][0], rest[-1][0]
    if not first.startswith("[") or not last.endswith("]"):
        raise line.error("labels must be written as [p q ...]", 2)
    labels = []
    for index, (token, column) in enumerate(rest, start=2):
        body = token
        if index == 2:
            body = body[1:]
        if index == len(line.tokens) - 1:
            body = body[:-1]
        if "[" in body or "]" in body:
            raise line.error("labels must be written as [p q ...]", index)
        if body:
            if not IDENT_RE.match(body):
                raise line.error(f"malformed identifier {body!r}", index)
            labels.append((index, body))
    return state, labels


def serialize_lts(lts: LabeledTransitionSystem) -> str:
    from ..lts import natural_key
    out = [f"system {lts.name}"]
    if lts.actions:
        out.append("actions " + " ".join(sorted(lts.actions, key=natural_key)))
    if lts.props:
        out.append("props " + " ".join(sorted(lts.props, key=natural_key)))
    for s in lts.sorted_states():
        labels = " ".join(sorted(lts.labeling[s], key=natural_key))
        out.append(f"state {s} [{labels}]")
    for s, a, t in sorted(lts.transitions, key=lambda e: tuple(natural_key(x) for x in e)):
        out.append(f"trans {s} {a} {t}")
    if lts.designated:
        out.append("init " + " ".join(lts.designated))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# automata

_FINITE = ("dfa", "nfa")
_VISIBLE = ("vpa", "dvpa")
_PUSHDOWN = ("pda", "dpda")
_LIST_DIRECTIVES = ("alphabet", "calls", "returns", "internals", "states", "final", "stack")
_ALLOWED = {
    "finite": {"kind", "name", "alphabet", "states", "initial", "final", "rule"},
    "visible": {"kind", "name", "calls", "returns", "internals", "states", "initial", "final",
                "stack", "bottom", "rule"},
    "pushdown": {"kind", "name", "alphabet", "states", "initial", "final", "stack", "bottom", "rule"},
}


def parse_aut(text: str):
    lines = list(_lines(text))
    kind_lines = [line for line in lines if line.directive == "kind"]
    if not kind_lines:
        raise ValidationError("missing kind directive", 1 if not lines else lines[0].number, 1)
    seen = set()
    kind = _single(kind_lines[0], seen)
    if kind not in _FINITE + _VISIBLE + _PUSHDOWN:
        raise kind_lines[0].error(f"unknown automaton kind {kind!r}", 1)
    family = "finite" if kind in _FINITE else "visible" if kind in _VISIBLE else "pushdown"
    lists = {d: [] for d in _LIST_DIRECTIVES}
    single = {"name": "A"}
    rules = []
    for line in lines:
        d = line.directive
        if d not in _ALLOWED[family] and d != "kind":
            raise line.error(f"directive {d!r} is not valid for a {kind}")
        if d == "kind":
            if line is not kind_lines[0]:
                raise line.error("duplicate kind directive")
        elif d in lists:
            lists[d] += _all(line, _AUT_TOKEN)
        elif d in ("name", "initial", "bottom"):
            single[d] = _single(line, seen, _AUT_TOKEN)
        else:
            rules.append(line)
    if "initial" not in single:
        raise ValidationError("missing initial directive", lines[-1].number)
    states = set(lists["states"])
    if not states:
        raise ValidationError("missing states directive", lines[-1].number)

    def state(line, i):
        token = _ident(line, i, _AUT_TOKEN)
        if token not in states:
            raise line.error(f"state {token!r} is not declared", i)
        return token

    try:
        if family == "finite":
            return _finite(kind, single, lists, rules, state)
        if family == "visible":
            return _visible(kind, single, lists, rules, state)
        return _pushdown(kind, single, lists, rules, state)
    except ValidationError as err:
        if err.line is not None:
            raise
        raise ValidationError(err.message, lines[0].number) from None


def _letter(line, i, letters):
    token = _ident(line, i, _AUT_TOKEN)
    if token not in letters:
        raise line.error(f"letter {token!r} is not declared", i)
    return token


def _symbol(line, i, stack):
    token = _ident(line, i, _AUT_TOKEN)
    if token not in stack:
        raise line.error(f"stack symbol {token!r} is not declared", i)
    return token


def _finite(kind, single, lists, rules, state):
    letters = set(lists["alphabet"])
    if "eps" in letters:
        raise ValidationError("'eps' is reserved and cannot be a letter")
    transitions = set()
    for line in rules:
        if len(line.tokens) != 4:
            raise line.error("finite rules have the form: rule q a q'")
        q = state(line, 1)
        a = EPS if line.tokens[2][0] == "eps" else _letter(line, 2, letters)
        transitions.add((q, a, state(line, 3)))
    return FiniteAutomaton(kind, lists["states"], letters, transitions, single["initial"],
                           lists["final"], name=single["name"])


def _visible(kind, single, lists, rules, state):
    calls, rets, ints = set(lists["calls"]), set(lists["returns"]), set(lists["internals"])
    if "bottom" not in single:
        raise ValidationError("missing bottom directive")
    stack = set(lists["stack"]) | {single["bottom"]}
    call_rules, return_rules, internal_rules = set(), set(), set()
    for line in rules:
        n = len(line.tokens)
        if n == 6 and line.tokens[3][0] in ("push", "pop"):
            q = state(line, 1)
            op = line.tokens[3][0]
            a = _letter(line, 2, calls if op == "push" else rets)
            g = _symbol(line, 4, stack)
            target = (call_rules if op == "push" else return_rules)
            target.add((q, a, g, state(line, 5)))
        elif n == 4:
            internal_rules.add((state(line, 1), _letter(line, 2, ints), state(line, 3)))
        else:
            raise line.error("vpa rules have the form: rule q a push G q' | rule q a pop G q' | "
                             "rule q a q'")
    return VisiblyPushdownAutomaton(kind, calls, rets, ints, lists["states"], stack,
                                    single["bottom"], call_rules, return_rules, internal_rules,
                                    single["initial"], lists["final"], name=single["name"])


def _pushdown(kind, single, lists, rules, state):
    letters = set(lists["alphabet"])
    if "bottom" not in single:
        raise ValidationError("missing bottom directive")
    stack = set(lists["stack"]) | {single["bottom"]}
    out = set()
    for line in rules:
        words = [t for t, _ in line.tokens]
        if len(words) < 6 or words[4] != "->":
            raise line.error("pushdown rules have the form: rule q a G -> q' G1 G2 ...")
        q, a, g = state(line, 1), _letter(line, 2, letters), _symbol(line, 3, stack)
        r = state(line, 5)
        w = tuple(_symbol(line, i, stack) for i in range(6, len(words)))
        out.add((q, a, g, r, w))
    return PushdownWordAutomaton(kind, lists["states"], letters, stack, single["bottom"], out,
                                 single["initial"], lists["final"], name=single["name"])


def _words(items):
    from ..lts import natural_key
    return " ".join(sorted(items, key=natural_key))


def serialize_aut(aut) -> str:
    out = [f"kind {aut.kind}", f"name {aut.name}"]
    if aut.kind in _FINITE:
        out.append(f"alphabet {_words(aut.alphabet)}".rstrip())
    elif aut.kind in _VISIBLE:
        out.append(f"calls {_words(aut.calls)}".rstrip())
        out.append(f"returns {_words(aut.returns)}".rstrip())
        out.append(f"internals {_words(aut.internals)}".rstrip())
    else:
        out.append(f"alphabet {_words(aut.alphabet)}".rstrip())
    out.append(f"states {_words(aut.states)}")
    out.append(f"initial {aut.initial}")
    out.append(f"final {_words(aut.finals)}".rstrip())
    if aut.kind in _FINITE:
        for q, a, r in sorted(aut.transitions, key=lambda t: (t[0], t[1] or "", t[2])):
            out.append(f"rule {q} {'eps' if a is EPS else a} {r}")
        return "\n".join(out) + "\n"
    out.append(f"stack {_words(aut.stack)}")
    out.append(f"bottom {aut.bottom}")
    if aut.kind in _VISIBLE:
        for q, a, g, r in sorted(aut.call_rules):
            out.append(f"rule {q} {a} push {g} {r}")
        for q, a, g, r in sorted(aut.return_rules):
            out.append(f"rule {q} {a} pop {g} {r}")
        for q, a, r in sorted(aut.internal_rules):
            out.append(f"rule {q} {a} {r}")
    else:
        for q, a, g, r, w in sorted(aut.rules):
            out.append(f"rule {q} {a} {g} -> {' '.join((r,) + tuple(w))}")
    return "\n".join(out) + "\n"
