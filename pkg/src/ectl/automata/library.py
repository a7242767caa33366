"""Named automata for the languages used throughout the tests and docs."""
from __future__ import annotations

from .finite import FiniteAutomaton
from .pushdown import PushdownWordAutomaton, VisiblyPushdownAutomaton


def anbn_vpa(call="a", ret="b", name="anbn") -> VisiblyPushdownAutomaton:
    """{a^n b^n | n >= 1} with ``a`` a call and ``b`` a return.

    The first ``a`` pushes ``A1`` so the automaton can tell when the last
    pending call is matched.
    """
    calls = {("q0", call, "A1", "up"), ("up", call, "A", "up")}
    rets = {("up", ret, "A", "down"), ("up", ret, "A1", "done"),
            ("down", ret, "A", "down"), ("down", ret, "A1", "done")}
    return VisiblyPushdownAutomaton("vpa", {call}, {ret}, set(), {"q0", "up", "down", "done"},
                                    {"A", "A1"}, "BOT", calls, rets, set(), "q0", {"done"},
                                    name=name)


def anban_dpda(name="anban_det") -> PushdownWordAutomaton:
    """{a^n b a^n | n >= 0}: count the a's before ``b``, pop on the a's after."""
    rules = {
        ("q0", "a", "BOT", "q0", ("A1", "BOT")),
        ("q0", "a", "A1", "q0", ("A", "A1")),
        ("q0", "a", "A", "q0", ("A", "A")),
        ("q0", "b", "BOT", "qf", ("BOT",)),
        ("q0", "b", "A1", "q1", ("A1",)),
        ("q0", "b", "A", "q1", ("A",)),
        ("q1", "a", "A", "q1", ()),
        ("q1", "a", "A1", "qf", ()),
    }
    return PushdownWordAutomaton("dpda", {"q0", "q1", "qf"}, {"a", "b"}, {"A", "A1"}, "BOT",
                                 rules, "q0", {"qf"}, name=name)


def anban_pda(name="anban") -> PushdownWordAutomaton:
    """{a^n b a^n | n >= 0} as a genuinely nondeterministic PDA: on every
    letter it may also hop into a primed copy of the deterministic automaton."""
    det = anban_dpda()
    rules = set(det.rules)
    for (q, a, g, r, w) in det.rules:
        rules.add((q + "'", a, g, r + "'", w))
        rules.add((q, a, g, r + "'", w))
    states = det.states | {q + "'" for q in det.states}
    finals = det.finals | {q + "'" for q in det.finals}
    return PushdownWordAutomaton("pda", states, det.alphabet, det.stack, det.bottom, rules,
                                 det.initial, finals, name=name)


def nbu_vpa(produce="p", consume="c", request="r", name="NBU") -> VisiblyPushdownAutomaton:
    """Non-underflowing buffer words: as many consumes as produces, and no
    prefix with more consumes than produces."""
    calls = {("zero", produce, "B1", "pos"), ("pos", produce, "B", "pos")}
    rets = {("pos", consume, "B", "pos"), ("pos", consume, "B1", "zero"),
            ("zero", consume, "BOT", "under"), ("under", consume, "BOT", "under")}
    ints = {("zero", request, "zero"), ("pos", request, "pos"), ("under", request, "under")}
    calls.add(("under", produce, "B", "under"))
    rets |= {("under", consume, "B", "under"), ("under", consume, "B1", "under")}
    return VisiblyPushdownAutomaton("vpa", {produce}, {consume}, {request},
                                    {"zero", "pos", "under"}, {"B", "B1"}, "BOT",
                                    calls, rets, ints, "zero", {"zero"}, name=name)


def even_nfa(letter="a", name="even") -> FiniteAutomaton:
    """(aa)* as a two-state automaton."""
    return FiniteAutomaton("nfa", {"e0", "e1"}, {letter},
                           {("e0", letter, "e1"), ("e1", letter, "e0")}, "e0", {"e0"}, name=name)


BUILTINS = {
    "anbn": anbn_vpa,
    "anban": anban_pda,
    "anban_det": anban_dpda,
    "nbu": nbu_vpa,
    "even": even_nfa,
}


def builtin(name):
    factory = BUILTINS.get(name)
    return None if factory is None else factory()
