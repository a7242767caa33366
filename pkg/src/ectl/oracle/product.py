"""Explicit product-graph search for DFA/NFA annotations."""
from __future__ import annotations

from collections import deque


class _Subsets:
    """Lazy powerset construction, written separately from the library one."""

    def __init__(self, aut):
        if aut.kind not in ("dfa", "nfa"):
            raise ValueError(f"finite_product_check needs a dfa or nfa, not a {aut.kind}")
        self.edges = {}
        self.eps = {}
        for (q, a, r) in aut.transitions:
            if a is None:
                self.eps.setdefault(q, set()).add(r)
            else:
                self.edges.setdefault((q, a), set()).add(r)
        self.finals = frozenset(aut.finals)
        self.start = self._close({aut.initial})
        self._memo = {}

    def _close(self, states):
        out = set(states)
        stack = list(states)
        while stack:
            for r in self.eps.get(stack.pop(), ()):
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def move(self, d, a):
        key = (d, a)
        if key not in self._memo:
            nxt = set()
            for q in d:
                nxt |= self.edges.get((q, a), set())
            self._memo[key] = self._close(nxt)
        return self._memo[key]

    def final(self, d):
        return bool(d & self.finals)


def _succ(lts):
    succ = {s: [] for s in lts.states}
    for (s, a, t) in sorted(lts.transitions):
        succ[s].append((a, t))
    return succ


def finite_product_check(lts, sat_x, aut, sat_y, mode) -> frozenset:
    """States satisfying ``E(x U[aut] y)`` (``mode="until"``) or
    ``E(x R[aut] y)`` (``mode="release"``) by plain graph search."""
    sub = _Subsets(aut)
    succ = _succ(lts)
    sat_x, sat_y = frozenset(sat_x), frozenset(sat_y)
    if mode == "until":
        return frozenset(s for s in lts.states if _until_from(s, sub, succ, sat_x, sat_y))
    if mode == "release":
        return frozenset(s for s in lts.states if _release_from(s, sub, succ, sat_x, sat_y))
    raise ValueError(f"mode must be until or release, not {mode!r}")


def _until_from(s, sub, succ, sat_x, sat_y):
    start = (sub.start, s)
    seen = {start}
    queue = deque([start])
    while queue:
        d, t = queue.popleft()
        if sub.final(d) and t in sat_y:
            return True
        if t not in sat_x:
            continue
        for a, u in succ[t]:
            nd = sub.move(d, a)
            if nd and (nd, u) not in seen:
                seen.add((nd, u))
                queue.append((nd, u))
    return False


def _release_from(s, sub, succ, sat_x, sat_y):
    # classify product nodes: released and safe dead ends are good stops,
    # violations are bad stops, everything else continues
    start = (sub.start, s)
    seen = {start}
    queue = deque([start])
    inner = {}
    while queue:
        d, t = queue.popleft()
        fires = sub.final(d)
        if t in sat_x and (not fires or t in sat_y):
            return True
        if fires and t not in sat_y:
            continue
        if not succ[t]:
            return True
        nxt = [(sub.move(d, a), u) for a, u in succ[t]]
        inner[(d, t)] = nxt
        for node in nxt:
            if node not in seen:
                seen.add(node)
                queue.append(node)
    # no good stop reachable: look for a cycle among continuing nodes
    indegree = {v: 0 for v in inner}
    for v, out in inner.items():
        for w in out:
            if w in inner:
                indegree[w] += 1
    ready = [v for v, n in indegree.items() if n == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for w in inner[v]:
            if w in inner:
                indegree[w] -= 1
                if indegree[w] == 0:
                    ready.append(w)
    return removed < len(inner)
