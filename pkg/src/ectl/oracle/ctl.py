"""Classical fixpoint labeling for the unannotated fragment."""
from __future__ import annotations

from ..logic import And, Const, Implies, Not, Or, Prop, Release, Unary, Until, default_lang


class _Graph:
    def __init__(self, lts):
        self.states = frozenset(lts.states)
        self.succ = {s: set() for s in self.states}
        for (s, _, t) in lts.transitions:
            self.succ[s].add(t)
        self.dead = frozenset(s for s in self.states if not self.succ[s])
        self.labels = {s: frozenset(lts.labeling.get(s, ())) for s in self.states}

    def ex(self, z):
        return {s for s in self.states if self.succ[s] & z}

    def ax(self, z):
        return {s for s in self.states if self.succ[s] <= z}

    def lfp(self, f):
        z = set()
        while True:
            nxt = f(z)
            if nxt == z:
                return frozenset(z)
            z = nxt

    def gfp(self, f):
        z = set(self.states)
        while True:
            nxt = f(z)
            if nxt == z:
                return frozenset(z)
            z = nxt


def eu_fix(g: _Graph, x, y):
    return g.lfp(lambda z: set(y) | (set(x) & g.ex(z)))


def er_fix(g: _Graph, x, y):
    return g.gfp(lambda z: set(y) & (set(x) | g.dead | g.ex(z)))


def au_fix(g: _Graph, x, y):
    return g.lfp(lambda z: set(y) | (set(x) & (g.ax(z) - g.dead)))


def ar_fix(g: _Graph, x, y):
    return g.gfp(lambda z: set(y) & (set(x) | g.ax(z)))


def ctl_fixpoint_check(lts, formula) -> frozenset:
    """States satisfying an unannotated formula, by least and greatest
    fixpoints over the successor relation (maximal-path semantics)."""
    return ctl_table(lts, formula)[formula]


def ctl_table(lts, formula) -> dict:
    g = _Graph(lts)
    table = {}
    _label(g, formula, table)
    return table


def _label(g, f, table):
    if f in table:
        return table[f]
    sets = [_label(g, c, table) for c in f.children()]
    if isinstance(f, Prop):
        out = {s for s in g.states if f.name in g.labels[s]}
    elif isinstance(f, Const):
        out = set(g.states) if f.value else set()
    elif isinstance(f, Not):
        out = g.states - sets[0]
    elif isinstance(f, And):
        out = sets[0] & sets[1]
    elif isinstance(f, Or):
        out = sets[0] | sets[1]
    elif isinstance(f, Implies):
        out = (g.states - sets[0]) | sets[1]
    elif isinstance(f, (Until, Release, Unary)):
        if f.lang != default_lang(f):
            raise ValueError(f"annotated operator {f} is outside plain CTL")
        out = _temporal(g, f, sets)
    else:
        raise TypeError(f"not a formula: {f!r}")
    table[f] = frozenset(out)
    return table[f]


def _temporal(g, f, sets):
    everything = g.states
    if isinstance(f, Until):
        return (eu_fix if f.path == "E" else au_fix)(g, sets[0], sets[1])
    if isinstance(f, Release):
        return (er_fix if f.path == "E" else ar_fix)(g, sets[0], sets[1])
    body = sets[0]
    if f.op == "EX":
        return g.ex(body)
    if f.op == "AX":
        return g.ax(body)
    if f.op == "EF":
        return eu_fix(g, everything, body)
    if f.op == "AF":
        return au_fix(g, everything, body)
    if f.op == "EG":
        return er_fix(g, set(), body)
    return ar_fix(g, set(), body)

