"""Depth-bounded path enumeration: a semi-decision procedure for operators
annotated with pushdown automata."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..logic import SIGMA_STAR, And, Const, Not, Or, Prop, Release, Until, desugar, post_order
from .ctl import _Graph, er_fix, eu_fix
from .product import finite_product_check
from .sim import Runner


@dataclass
class BoundedVerdict:
    """Per-state ``True``/``False``/``None`` (unknown) plus the horizon."""

    values: dict
    depth: int

    def verdict(self, state):
        return self.values[state]

    def known(self) -> dict:
        return {s: v for s, v in self.values.items() if v is not None}


def bounded_path_check(lts, formula, env, depth: int) -> BoundedVerdict:
    """Lower and upper approximations of every core subformula.

    Operators annotated with finite automata or left unannotated are decided
    exactly; pushdown annotations are explored along all paths of length at
    most ``depth`` while simulating the automaton.  A state is reported
    ``None`` when the two approximations disagree.
    """
    core = desugar(formula)
    g = _Graph(lts)
    succ = {s: sorted((a, t) for (x, a, t) in lts.transitions if x == s) for s in lts.states}
    lower, upper = {}, {}
    for node in post_order(core):
        if isinstance(node, Prop):
            lo = hi = frozenset(s for s in g.states if node.name in g.labels[s])
        elif isinstance(node, Const):
            lo = hi = g.states if node.value else frozenset()
        elif isinstance(node, Not):
            lo, hi = g.states - upper[node.body], g.states - lower[node.body]
        elif isinstance(node, And):
            lo = lower[node.left] & lower[node.right]
            hi = upper[node.left] & upper[node.right]
        elif isinstance(node, Or):
            lo = lower[node.left] | lower[node.right]
            hi = upper[node.left] | upper[node.right]
        elif isinstance(node, (Until, Release)):
            lo, hi = _temporal(lts, g, succ, node, env, depth,
                               (lower[node.left], lower[node.right]),
                               (upper[node.left], upper[node.right]))
        else:
            raise TypeError(f"unexpected node {node!r}")
        lower[node], upper[node] = frozenset(lo), frozenset(hi)
    values = {}
    for s in lts.states:
        if s in lower[core]:
            values[s] = True
        elif s not in upper[core]:
            values[s] = False
        else:
            values[s] = None
    return BoundedVerdict(values, depth)


def _temporal(lts, g, succ, node, env, depth, low, high):
    until = isinstance(node, Until)
    if node.lang == SIGMA_STAR:
        fix = eu_fix if until else er_fix
        return fix(g, *low), fix(g, *high)
    aut = env.resolve(node.lang)
    if aut.kind in ("dfa", "nfa"):
        mode = "until" if until else "release"
        return (finite_product_check(lts, low[0], aut, low[1], mode),
                finite_product_check(lts, high[0], aut, high[1], mode))
    runner = Runner(aut)
    search = _until_search if until else _release_search
    lo, hi = set(), set()
    for s in g.states:
        if search(s, runner, succ, *low, depth)[0]:
            lo.add(s)
            hi.add(s)
            continue
        found, truncated = search(s, runner, succ, *high, depth)
        if found or truncated:
            hi.add(s)
    return lo, hi


def _until_search(s, runner, succ, x, y, depth):
    """``(found, truncated)`` for a witness prefix of length at most ``depth``."""
    truncated = False
    best = {}
    todo = [(s, runner.start(), depth)]
    while todo:
        t, configs, left = todo.pop()
        if best.get((t, configs), -1) >= left:
            continue
        best[(t, configs)] = left
        if runner.accepting(configs) and t in y:
            return True, truncated
        if t not in x:
            continue
        for a, u in succ[t]:
            nxt = runner.step(configs, a)
            if not nxt:
                continue
            if left == 0:
                truncated = True
                continue
            todo.append((u, nxt, left - 1))
    return False, truncated


def _release_search(s, runner, succ, x, y, depth):
    """``(found, truncated)`` for a safe maximal path: a release, a safe dead
    end, an exhausted automaton, or a cycle of safe nodes within the horizon."""
    start = (s, runner.start())
    dist = {start: 0}
    queue = deque([start])
    inner = {}
    truncated = False
    while queue:
        node = queue.popleft()
        t, configs = node
        if not configs:
            return True, truncated
        fires = runner.accepting(configs)
        if t in x and (not fires or t in y):
            return True, truncated
        if fires and t not in y:
            continue
        if not succ[t]:
            return True, truncated
        if dist[node] == depth:
            truncated = True
            continue
        inner[node] = [(u, runner.step(configs, a)) for a, u in succ[t]]
        for nxt in inner[node]:
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
    return _has_cycle(inner), truncated


def _has_cycle(graph) -> bool:
    indegree = {v: 0 for v in graph}
    for out in graph.values():
        for w in out:
            if w in graph:
                indegree[w] += 1
    ready = [v for v, n in indegree.items() if n == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for w in graph[v]:
            if w in graph:
                indegree[w] -= 1
                if indegree[w] == 0:
                    ready.append(w)
    return removed < len(graph)
