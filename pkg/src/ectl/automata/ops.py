"""Kind-generic operations over every automaton class."""
from __future__ import annotations

from collections import deque

from ..errors import ValidationError
from ..pds import PushdownSystem, heads_automaton, normalize, pre_star
from . import finite, pushdown
from .finite import FiniteAutomaton
from .pushdown import PushdownWordAutomaton, VisiblyPushdownAutomaton

FINITE_KINDS = ("dfa", "nfa")
VISIBLY_KINDS = ("vpa", "dvpa")
PUSHDOWN_KINDS = ("pda", "dpda")
DETERMINISTIC_KINDS = ("dfa", "dvpa", "dpda")
KINDS = FINITE_KINDS + VISIBLY_KINDS + PUSHDOWN_KINDS

LIFT_BOTTOM = "BOT"


def alphabet(aut) -> frozenset:
    return aut.alphabet


def accepts(aut, word) -> bool:
    return aut.accepts(tuple(word))


def size(aut) -> int:
    """States plus rules."""
    return aut.size


def is_deterministic(aut) -> bool:
    return aut.kind in DETERMINISTIC_KINDS


def determinize(aut, cap=None):
    if aut.kind == "nfa":
        return finite.determinize_nfa(aut, cap=cap)
    if aut.kind == "vpa":
        return pushdown.determinize_vpa(aut, cap=cap)
    if aut.kind == "pda":
        raise ValidationError(f"{aut.name}: nondeterministic pushdown automata cannot be determinized")
    return aut


def complete(aut):
    if aut.kind == "dfa":
        return finite.complete_dfa(aut)
    if aut.kind == "dvpa":
        return pushdown.complete_dvpa(aut)
    if aut.kind == "dpda":
        return pushdown.complete_dpda(aut)
    raise ValidationError(f"cannot complete {aut.kind} {aut.name}: determinize it first")


def complement(aut):
    if aut.kind == "dfa":
        return finite.complement_dfa(aut)
    if aut.kind == "dvpa":
        return pushdown.complement_dvpa(aut)
    if aut.kind == "dpda":
        return pushdown.complement_dpda(aut)
    raise ValidationError(f"cannot complement {aut.kind} {aut.name}: determinize and complete it first")


def with_letters(aut, letters):
    """Same language over a larger alphabet (extra VPA letters are internals)."""
    if isinstance(aut, FiniteAutomaton):
        return finite.with_alphabet(aut, letters)
    if isinstance(aut, VisiblyPushdownAutomaton):
        return pushdown.vpa_with_internals(aut, letters)
    return pushdown.pda_with_alphabet(aut, letters)


def lift(aut):
    """View any automaton as a real-time pushdown automaton.

    Returns ``(rules, stack, bottom)`` with rules ``(p, a, gamma, q, w)``
    (``w`` top-first).  Finite automata get the single stack symbol
    ``BOT``; epsilon edges are eliminated first.
    """
    if isinstance(aut, FiniteAutomaton):
        nfa = finite.remove_epsilon(aut)
        b = LIFT_BOTTOM
        rules = [(q, a, b, r, (b,)) for (q, a, r) in sorted(nfa.transitions)]
        return rules, frozenset({b}), b
    if isinstance(aut, VisiblyPushdownAutomaton):
        b = aut.bottom
        stack = sorted(aut.stack)
        rules = []
        for (q, a, g, r) in sorted(aut.call_rules):
            rules.extend((q, a, x, r, (g, x)) for x in stack)
        for (q, a, g, r) in sorted(aut.return_rules):
            rules.append((q, a, g, r, (b,) if g == b else ()))
        for (q, a, r) in sorted(aut.internal_rules):
            rules.extend((q, a, x, r, (x,)) for x in stack)
        return rules, aut.stack, b
    if isinstance(aut, PushdownWordAutomaton):
        return sorted(aut.rules), aut.stack, aut.bottom
    raise TypeError(f"not an automaton: {aut!r}")


def initial_finals(aut):
    if isinstance(aut, FiniteAutomaton):
        return aut.initial, finite.remove_epsilon(aut).finals
    return aut.initial, aut.finals


# --------------------------------------------------------------------------
# language measures

def is_empty(aut) -> bool:
    """Emptiness via backward reachability of a final state (any stack)."""
    rules, stack, bottom = lift(aut)
    q0, finals = initial_finals(aut)
    pds = normalize(PushdownSystem(aut.states, stack, [(p, g, q, w) for (p, _, g, q, w) in rules]))
    target = heads_automaton(pds.states, [(f, g) for f in finals for g in stack], stack)
    return not pre_star(pds, target).accepts(q0, (bottom,))


def shortest_word(aut):
    """A shortest accepted word (breadth-first over configurations), or
    ``None`` when the language is empty."""
    if is_empty(aut):
        return None
    if isinstance(aut, FiniteAutomaton):
        nfa = finite.remove_epsilon(aut)
        start = nfa.initial
        parent = {start: None}
        queue = deque([start])
        while queue:
            q = queue.popleft()
            if q in nfa.finals:
                word = []
                while parent[q] is not None:
                    q, a = parent[q]
                    word.append(a)
                return tuple(reversed(word))
            for a in sorted(nfa.alphabet):
                for r in nfa.targets(q, a):
                    if r not in parent:
                        parent[r] = (q, a)
                        queue.append(r)
        return None
    start = (aut.initial, ())
    parent = {start: None}
    queue = deque([start])
    letters = sorted(aut.alphabet)
    while queue:
        cfg = queue.popleft()
        if cfg[0] in aut.finals:
            word = []
            while parent[cfg] is not None:
                cfg, a = parent[cfg]
                word.append(a)
            return tuple(reversed(word))
        for a in letters:
            for nxt in aut.step(cfg, a):
                if nxt not in parent:
                    parent[nxt] = (cfg, a)
                    queue.append(nxt)
    return None


def _trim(nfa: FiniteAutomaton):
    forward = {nfa.initial}
    todo = [nfa.initial]
    edges = [(q, a, r) for (q, a, r) in nfa.transitions]
    while todo:
        q = todo.pop()
        for (p, _, r) in edges:
            if p == q and r not in forward:
                forward.add(r)
                todo.append(r)
    backward = set(nfa.finals)
    changed = True
    while changed:
        changed = False
        for (p, _, r) in edges:
            if r in backward and p not in backward:
                backward.add(p)
                changed = True
    useful = forward & backward
    return useful, [(p, a, r) for (p, a, r) in edges if p in useful and r in useful]


def is_finite_language(aut) -> bool:
    """Finite-automaton languages only: no cycle among useful states."""
    if not isinstance(aut, FiniteAutomaton):
        raise ValidationError(f"finiteness of {aut.kind} languages is not supported")
    nfa = finite.remove_epsilon(aut)
    useful, edges = _trim(nfa)
    succ = {q: [r for (p, _, r) in edges if p == q] for q in useful}
    color = {q: 0 for q in useful}
    for root in useful:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[q] = 2
                stack.pop()
            elif color[nxt] == 1:
                return False
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


def longest_word_length(aut) -> int:
    nfa = finite.remove_epsilon(aut)
    if not is_finite_language(nfa):
        raise ValidationError(f"{aut.name} accepts an infinite language")
    useful, edges = _trim(nfa)
    if nfa.initial not in useful:
        raise ValidationError(f"{aut.name} accepts the empty language")
    memo = {}

    def longest(q):
        if q not in memo:
            best = 0 if q in nfa.finals else None
            for (p, _, r) in edges:
                if p == q:
                    sub = longest(r)
                    if sub is not None and (best is None or sub + 1 > best):
                        best = sub + 1
            memo[q] = best
        return memo[q]

    return longest(nfa.initial)


def automaton_depth(aut) -> int:
    """Longest accepted word for finite languages, shortest otherwise.

    Pushdown languages are measured by their shortest word; finiteness is
    not decided for them.
    """
    if isinstance(aut, FiniteAutomaton):
        if is_empty(aut):
            raise ValidationError(f"{aut.name} accepts the empty language")
        if is_finite_language(aut):
            return longest_word_length(aut)
        return len(shortest_word(aut))
    word = shortest_word(aut)
    if word is None:
        raise ValidationError(f"{aut.name} accepts the empty language")
    return len(word)


def letters_of_length_one(aut) -> frozenset:
    return frozenset(a for a in aut.alphabet if aut.accepts((a,)))


def restrict_to_single_letters(aut, alphabet) -> FiniteAutomaton:
    """Automaton for ``L(aut)`` intersected with the one-letter words."""
    return finite.letters_automaton(letters_of_length_one(aut), alphabet,
                                    name=f"{aut.name}&Sigma")

