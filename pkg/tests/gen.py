"""Seeded random instance generators and brute-force helpers shared by the
test modules."""
from __future__ import annotations

import itertools
from collections import deque

from ectl.automata import FiniteAutomaton, PushdownWordAutomaton, VisiblyPushdownAutomaton
from ectl.logic import (FF, SIGMA, SIGMA_STAR, TT, And, Implies, Lang, Not, Or, Prop, Release,
                        Unary, Until)
from ectl.lts import LabeledTransitionSystem
from ectl.pds import PushdownSystem

ACTIONS = ("a", "b")
PROPS = ("p", "q")


def random_lts(rng, max_states=8, actions=ACTIONS, props=PROPS, density=0.25):
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    edges = {(s, a, t) for s in states for a in actions for t in states if rng.random() < density / len(actions) * 2}
    labeling = {s: {p for p in props if rng.random() < 0.5} for s in states}
    return LabeledTransitionSystem(states, actions, edges, labeling, props=props)


def random_plain_formula(rng, depth, props=PROPS):
    """Random formula over every operator with default annotations."""
    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.1:
            return TT if rng.random() < 0.5 else FF
        return Prop(rng.choice(props))
    sub = lambda: random_plain_formula(rng, depth - 1, props)  # noqa: E731
    op = rng.choice(["not", "and", "or", "implies", "EU", "AU", "ER", "AR",
                     "EF", "AF", "EG", "AG", "EX", "AX"])
    if op == "not":
        return Not(sub())
    if op in ("and", "or", "implies"):
        return {"and": And, "or": Or, "implies": Implies}[op](sub(), sub())
    if op in ("EU", "AU"):
        return Until(op[0], sub(), SIGMA_STAR, sub())
    if op in ("ER", "AR"):
        return Release(op[0], sub(), SIGMA_STAR, sub())
    lang = SIGMA if op[1] == "X" else SIGMA_STAR
    return Unary(op, lang, sub())


def random_nfa(rng, max_states=5, alphabet=ACTIONS, eps=True, name="A"):
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    letters = list(alphabet) + ([None] if eps else [])
    trans = {(q, a, r) for q in states for a in letters for r in states
             if rng.random() < (0.1 if a is None else 0.3)}
    finals = {q for q in states if rng.random() < 0.4}
    return FiniteAutomaton("nfa", states, alphabet, trans, states[0], finals, name=name)


def random_dfa(rng, max_states=5, alphabet=ACTIONS, name="D"):
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    trans = {(q, a, rng.choice(states)) for q in states for a in alphabet if rng.random() < 0.8}
    finals = {q for q in states if rng.random() < 0.4}
    return FiniteAutomaton("dfa", states, alphabet, trans, states[0], finals, name=name)


VPA_CALLS, VPA_RETURNS, VPA_INTERNALS = ("a",), ("b",), ("c",)


def random_vpa(rng, max_states=5, stack=("X", "Y"), name="V"):
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    full = tuple(stack) + ("BOT",)
    calls = {(q, a, g, r) for q in states for a in VPA_CALLS for g in stack for r in states
             if rng.random() < 0.15}
    rets = {(q, a, g, r) for q in states for a in VPA_RETURNS for g in full for r in states
            if rng.random() < 0.15}
    ints = {(q, a, r) for q in states for a in VPA_INTERNALS for r in states if rng.random() < 0.2}
    finals = {q for q in states if rng.random() < 0.4}
    return VisiblyPushdownAutomaton("vpa", VPA_CALLS, VPA_RETURNS, VPA_INTERNALS, states, stack,
                                    "BOT", calls, rets, ints, states[0], finals, name=name)


def random_pda(rng, max_states=3, stack=("X", "Y"), name="P"):
    """Nondeterministic real-time PDA over ``a``/``b`` that keeps BOT at the bottom."""
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    rules = set()
    for _ in range(rng.randint(1, 8)):
        g = rng.choice(stack + ("BOT",))
        w = tuple(rng.choice(stack) for _ in range(rng.randint(0, 2)))
        if g == "BOT":
            w += ("BOT",)
        rules.add((rng.choice(states), rng.choice(ACTIONS), g, rng.choice(states), w))
    finals = {q for q in states if rng.random() < 0.5}
    return PushdownWordAutomaton("pda", states, ACTIONS, stack, "BOT", rules, states[0], finals,
                                 name=name)


def random_dpda(rng, max_states=3, stack=("X", "Y"), name="DP"):
    """Deterministic real-time PDA: at most one rule per (state, letter, top)."""
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    rules = set()
    for q in states:
        for a in ACTIONS:
            for g in stack + ("BOT",):
                if rng.random() < 0.6:
                    w = tuple(rng.choice(stack) for _ in range(rng.randint(0, 2)))
                    if g == "BOT":
                        w += ("BOT",)
                    rules.add((q, a, g, rng.choice(states), w))
    finals = {q for q in states if rng.random() < 0.5}
    return PushdownWordAutomaton("dpda", states, ACTIONS, stack, "BOT", rules, states[0], finals,
                                 name=name)


def random_pds(rng, max_states=4, max_symbols=3, max_rules=10, max_push=2):
    states = [f"p{i}" for i in range(rng.randint(1, max_states))]
    stack = ["abc"[i] for i in range(rng.randint(1, max_symbols))]
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        w = tuple(rng.choice(stack) for _ in range(rng.randint(0, max_push)))
        rules.append((rng.choice(states), rng.choice(stack), rng.choice(states), w))
    return PushdownSystem(states, stack, rules)


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(sorted(alphabet), repeat=n)


def all_configs(pds, max_height):
    for p in sorted(pds.states, key=str):
        for w in words(pds.stack, max_height):
            yield (p, w)


def backward_closure(pds, targets, max_height):
    """Configurations of height <= max_height that reach ``targets`` through
    configurations of that height."""
    universe = list(all_configs(pds, max_height))
    reach = {c for c in universe if c in targets}
    pred = {c: [] for c in universe}
    for c in universe:
        for d in pds.successors(c):
            if d in pred:
                pred[d].append(c)
    queue = deque(reach)
    while queue:
        d = queue.popleft()
        for c in pred[d]:
            if c not in reach:
                reach.add(c)
                queue.append(c)
    return reach


def forward_reaches(pds, start, targets, max_height, limit=200000):
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if c in targets:
            return True
        for d in pds.successors(c):
            if len(d[1]) <= max_height and d not in seen:
                seen.add(d)
                if len(seen) > limit:
                    return None
                queue.append(d)
    return False


def run_of_length(pds, start, k):
    """A run of exactly ``k`` steps from ``start`` (DFS), or ``None``."""
    failed = set()

    def dfs(c, left):
        if left == 0:
            return [c]
        if (c, left) in failed:
            return None
        for d in pds.successors(c):
            rest = dfs(d, left - 1)
            if rest is not None:
                return [c] + rest
        failed.add((c, left))
        return None

    return dfs(start, k)


def all_runs_halt(pds, start, max_height):
    """True iff every run from ``start`` halts, certified by exploring the
    finite reachable graph (within ``max_height``) and finding no cycle.
    ``None`` when the exploration leaves the bounded universe."""
    graph = {}
    stack = [start]
    while stack:
        c = stack.pop()
        if c in graph:
            continue
        succ = pds.successors(c)
        if any(len(d[1]) > max_height for d in succ):
            return None
        graph[c] = succ
        stack.extend(succ)
    indegree = {c: 0 for c in graph}
    for succ in graph.values():
        for d in succ:
            indegree[d] += 1
    ready = [c for c, n in indegree.items() if n == 0]
    removed = 0
    while ready:
        c = ready.pop()
        removed += 1
        for d in graph[c]:
            indegree[d] -= 1
            if indegree[d] == 0:
                ready.append(d)
    return removed == len(graph)


def universal_lts(alphabet):
    """One state looping on every letter."""
    return LabeledTransitionSystem({"s"}, alphabet, {("s", a, "s") for a in alphabet}, {},
                                   designated=("s",))


def name_lang(name, expect=None):
    return Lang("name", name, expect=expect)
