"""Pushdown systems, P-automata and backward reachability (pre*).

A configuration is a pair ``(p, w)`` of a control state and a stack word
written top-first.  Regular sets of configurations are represented by
:class:`ConfigAutomaton`: an NFA over the stack alphabet that reads ``w`` from
the state ``p``.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

import networkx as nx

from .errors import ValidationError


@dataclass(frozen=True, order=True)
class Fresh:
    """Intermediate control state introduced by :func:`normalize`."""

    index: int

    def __str__(self):
        return f"norm:{self.index}"


class PushdownSystem:
    """Control states, stack alphabet and rules ``(p, gamma, q, w)``.

    Rules keep their declaration order; duplicates are dropped.  ``labels``
    maps a rule to an arbitrary annotation (the checker stores the LTS step
    and automaton rule a product rule came from).
    """

    def __init__(self, states, stack, rules, bottom=None, labels=None):
        seen = {}
        for rule in rules:
            p, g, q, w = rule
            seen.setdefault((p, g, q, tuple(w)), None)
        self.rules = tuple(seen)
        self.states = frozenset(states)
        self.stack = frozenset(stack)
        self.bottom = bottom
        self.labels = dict(labels or {})
        for (p, g, q, w) in self.rules:
            if p not in self.states or q not in self.states:
                raise ValidationError(f"rule ({p}, {g}) -> ({q}, {w}) uses an undeclared control state")
            for x in (g,) + w:
                if x not in self.stack:
                    raise ValidationError(f"rule ({p}, {g}) -> ({q}, {w}) uses undeclared stack symbol {x!r}")
        self._triggers = frozenset((p, g) for (p, g, _, _) in self.rules)

    def __repr__(self):
        return f"PushdownSystem({len(self.states)} states, {len(self.stack)} symbols, {len(self.rules)} rules)"

    @property
    def is_normalized(self) -> bool:
        return all(len(w) <= 2 for (_, _, _, w) in self.rules)

    def triggers(self) -> frozenset:
        return self._triggers

    def successors(self, config):
        """One-step successors of a configuration (used by brute-force oracles)."""
        p, w = config
        if not w:
            return []
        top, rest = w[0], tuple(w[1:])
        return [(q, tuple(v) + rest) for (p1, g, q, v) in self.rules if p1 == p and g == top]

    def without(self, predicate) -> "PushdownSystem":
        rules = [r for r in self.rules if not predicate(r)]
        return PushdownSystem(self.states, self.stack, rules, bottom=self.bottom,
                              labels={r: self.labels[r] for r in rules if r in self.labels})


def normalize(pds: PushdownSystem) -> PushdownSystem:
    """Split every rule pushing more than two symbols into a chain of
    push-two rules through fresh control states."""
    if pds.is_normalized:
        return pds
    states = set(pds.states)
    rules = []
    labels = {}
    counter = 0
    for rule in pds.rules:
        p, g, q, w = rule
        if len(w) <= 2:
            rules.append(rule)
            if rule in pds.labels:
                labels[rule] = pds.labels[rule]
            continue
        k = len(w)
        fresh = [Fresh(counter + i) for i in range(k - 2)]
        counter += k - 2
        states.update(fresh)
        first = (p, g, fresh[0], (w[k - 2], w[k - 1]))
        rules.append(first)
        if rule in pds.labels:
            labels[first] = pds.labels[rule]
        # fresh[i] sits on w[k-2-i] and pushes one more symbol on top of it
        for i in range(k - 2):
            target = fresh[i + 1] if i + 1 < k - 2 else q
            j = k - 2 - i
            rules.append((fresh[i], w[j], target, (w[j - 1], w[j])))
    return PushdownSystem(states, pds.stack, rules, bottom=pds.bottom, labels=labels)


# --------------------------------------------------------------------------
# configuration automata

def _aux(n):
    return f"aux:{n}"


def _fmt(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


class ConfigAutomaton:
    """NFA over the stack alphabet whose initial states are the control
    states ``controls``; it accepts ``(p, w)`` iff it accepts ``w`` from ``p``."""

    def __init__(self, controls, states, edges, finals, provenance=None):
        self.controls = frozenset(controls)
        self.states = frozenset(states) | self.controls
        self.edges = frozenset(edges)
        self.finals = frozenset(finals)
        self.provenance = provenance
        out = defaultdict(list)
        for (q, g, r) in sorted(self.edges, key=_edge_key):
            out[(q, g)].append(r)
        self._out = dict(out)

    def __repr__(self):
        return f"ConfigAutomaton({len(self.states)} states, {len(self.edges)} edges)"

    def targets(self, q, g):
        return self._out.get((q, g), ())

    def accepts(self, p, word) -> bool:
        if p not in self.controls:
            raise ValidationError(f"unknown control state {_fmt(p)}")
        current = {p}
        for g in word:
            current = {r for q in current for r in self._out.get((q, g), ())}
            if not current:
                return False
        return bool(current & self.finals)

    def accepting_path(self, p, word):
        """Edges of one accepting run on ``word`` from ``p``, or ``None``."""
        layers = [{p: None}]
        for g in word:
            nxt = {}
            for q in layers[-1]:
                for r in self._out.get((q, g), ()):
                    nxt.setdefault(r, q)
            if not nxt:
                return None
            layers.append(nxt)
        end = next((q for q in layers[-1] if q in self.finals), None)
        if end is None:
            return None
        path = []
        for i in range(len(word), 0, -1):
            prev = layers[i][end]
            path.append((prev, word[i - 1], end))
            end = prev
        path.reverse()
        return path

    def dump(self) -> str:
        """Stable text rendering: one ``STATE symbol STATE`` line per edge,
        then one ``final STATE`` line per final state."""
        lines = sorted(f"{_fmt(q)} {_fmt(g)} {_fmt(r)}" for (q, g, r) in self.edges)
        lines += sorted(f"final {_fmt(q)}" for q in self.finals)
        return "\n".join(lines) + "\n"


def _edge_key(edge):
    return tuple(_fmt(x) for x in edge)


def accepts_config(ca: ConfigAutomaton, p, w) -> bool:
    return ca.accepts(p, tuple(w))


def config_set(controls, configs, stack=None, universal_suffix=False) -> ConfigAutomaton:
    """P-automaton for a finite set of configurations (a trie).  With
    ``universal_suffix`` every listed word is a prefix and any stack
    continuation over ``stack`` is accepted."""
    edges = set()
    finals = set()
    node_of = {}
    counter = 0
    for (p, w) in configs:
        q = p
        for i, g in enumerate(w):
            key = (p, tuple(w[:i + 1]))
            if key not in node_of:
                node_of[key] = _aux(counter)
                counter += 1
            edges.add((q, g, node_of[key]))
            q = node_of[key]
        finals.add(q)
    if universal_suffix:
        loop = _aux(counter)
        for q in finals:
            edges.update((q, g, loop) for g in stack)
        edges.update((loop, g, loop) for g in stack)
        finals.add(loop)
    states = set(controls) | set(node_of.values()) | {r for (_, _, r) in edges}
    return ConfigAutomaton(controls, states, edges, finals)


def heads_automaton(controls, heads, stack) -> ConfigAutomaton:
    """Accepts ``(p, gamma w)`` for every head ``(p, gamma)`` and any ``w``."""
    acc = _aux(0)
    edges = {(p, g, acc) for (p, g) in heads}
    edges |= {(acc, g, acc) for g in stack}
    return ConfigAutomaton(controls, set(controls) | {acc}, edges, {acc})


def union(a: ConfigAutomaton, b: ConfigAutomaton) -> ConfigAutomaton:
    if a.controls != b.controls:
        raise ValidationError("cannot unite configuration automata over different control states")
    rename = {}
    n = 0
    for ca in (a, b):
        for s in sorted(ca.states - ca.controls, key=_fmt):
            rename[(id(ca), s)] = _aux(n)
            n += 1

    def r(ca, s):
        return s if s in ca.controls else rename[(id(ca), s)]

    edges = {(r(ca, q), g, r(ca, t)) for ca in (a, b) for (q, g, t) in ca.edges}
    finals = {r(ca, q) for ca in (a, b) for q in ca.finals}
    states = {r(ca, q) for ca in (a, b) for q in ca.states}
    return ConfigAutomaton(a.controls, states, edges, finals)


def rerooted(ca: ConfigAutomaton) -> ConfigAutomaton:
    """Same language, but no edge enters a control state.

    Saturated automata have such edges (popping rules add them), which
    disqualifies them as saturation targets; every control state gets a
    copy that takes over its incoming edges.
    """
    copies = {q: ("copy", q) for q in ca.controls}
    edges = set()
    for (q, g, r) in ca.edges:
        edges.add((q, g, copies.get(r, r)))
        if q in copies:
            edges.add((copies[q], g, copies.get(r, r)))
    finals = {copies.get(q, q) for q in ca.finals} | (ca.finals & ca.controls)
    return ConfigAutomaton(ca.controls, set(ca.states) | set(copies.values()), edges, finals)


# --------------------------------------------------------------------------
# saturation

TARGET = ("target",)


def pre_star(pds: PushdownSystem, target: ConfigAutomaton) -> ConfigAutomaton:
    """Saturate ``target`` into an automaton for all predecessors.

    Whenever a rule ``(p, g) -> (q, w)`` exists and the automaton can read
    ``w`` from ``q`` into some state ``r``, the edge ``p --g--> r`` is added.
    Work proceeds FIFO; every added edge records the rule and edges that
    justified it, which :func:`witness_run` replays.
    """
    if not pds.is_normalized:
        raise ValidationError("pre* needs a normalized pushdown system")
    if not pds.states <= target.controls:
        raise ValidationError("target automaton must have the system's control states as initial states")
    for (q, g, r) in target.edges:
        if r in target.controls:
            raise ValidationError(f"target automaton has an edge into control state {_fmt(r)}")

    swaps = defaultdict(list)
    pushes = defaultdict(list)
    reasons = {}
    work = deque()

    def add(t, reason):
        if t not in reasons:
            reasons[t] = reason
            work.append(t)

    for t in sorted(target.edges, key=_edge_key):
        add(t, TARGET)
    for idx, (p, g, q, w) in enumerate(pds.rules):
        if not w:
            add((p, g, q), ("pop", idx))
        elif len(w) == 1:
            swaps[(q, w[0])].append(idx)
        else:
            pushes[(q, w[0])].append(idx)

    rules = pds.rules
    out = defaultdict(dict)
    derived = defaultdict(list)
    while work:
        t = work.popleft()
        q, g, r = t
        out[(q, g)][r] = None
        for idx in swaps.get((q, g), ()):
            p1, g1 = rules[idx][0], rules[idx][1]
            add((p1, g1, r), ("swap", idx, t))
        for idx in pushes.get((q, g), ()):
            p1, g1, _, w = rules[idx]
            g2 = w[1]
            derived[(r, g2)].append((p1, g1, idx, t))
            for r2 in list(out.get((r, g2), ())):
                add((p1, g1, r2), ("push", idx, t, (r, g2, r2)))
        for (p1, g1, idx, t1) in derived.get((q, g), ()):
            add((p1, g1, r), ("push", idx, t1, t))
    edges = set(reasons)
    return ConfigAutomaton(target.controls, target.states, edges, target.finals,
                           provenance=(pds, reasons))


def witness_run(ca: ConfigAutomaton, p, w):
    """Replay saturation provenance: the rules of a run from ``(p, w)`` into
    the original target set, in order.  ``None`` if ``(p, w)`` is not accepted."""
    if ca.provenance is None:
        raise ValidationError("automaton was not produced by pre_star")
    pds, reasons = ca.provenance
    path = ca.accepting_path(p, tuple(w))
    if path is None:
        return None
    run = []
    while path and reasons[path[0]] is not TARGET:
        reason = reasons[path[0]]
        idx = reason[1]
        run.append(pds.rules[idx])
        if reason[0] == "pop":
            path = path[1:]
        elif reason[0] == "swap":
            path = [reason[2]] + path[1:]
        else:
            path = [reason[2], reason[3]] + path[1:]
    return run


# --------------------------------------------------------------------------
# infinite runs

def _pop_summaries(pds: PushdownSystem):
    """``{(p, g, q)}`` such that ``(p, g) =>* (q, eps)``."""
    empty = ConfigAutomaton(pds.states, pds.states, (), ())
    return pre_star(pds, empty).edges


def head_graph(pds: PushdownSystem) -> nx.DiGraph:
    """Heads ``(p, gamma)`` with an edge whenever one head can reach the
    other without consulting the stack below the original head."""
    pops = defaultdict(list)
    for (p, g, q) in _pop_summaries(pds):
        pops[(p, g)].append(q)
    graph = nx.DiGraph()
    for (p, g, q, w) in pds.rules:
        if len(w) >= 1:
            graph.add_edge((p, g), (q, w[0]))
        if len(w) == 2:
            for q2 in pops.get((q, w[0]), ()):
                graph.add_edge((p, g), (q2, w[1]))
    return graph


def repeating_heads(pds: PushdownSystem, method: str = "graph") -> frozenset:
    """Heads ``(p, gamma)`` with ``(p, gamma) =>+ (p, gamma w)``.

    ``method="graph"`` finds the heads on a cycle of :func:`head_graph`;
    ``method="prestar"`` runs one saturation per head against a marker
    symbol slid under the head, and serves as a cross-check.
    """
    if not pds.is_normalized:
        raise ValidationError("repeating_heads needs a normalized pushdown system")
    if method == "graph":
        graph = head_graph(pds)
        rep = set()
        for comp in nx.strongly_connected_components(graph):
            if len(comp) > 1:
                rep |= comp
            else:
                (node,) = comp
                if graph.has_edge(node, node):
                    rep.add(node)
        return frozenset(rep)
    if method == "prestar":
        return frozenset(h for h in _all_heads(pds) if _repeats_by_prestar(pds, h))
    raise ValueError(f"unknown method {method!r}")


def _all_heads(pds):
    return sorted(pds.triggers(), key=_edge_key)


class _Marker:
    def __repr__(self):
        return "#"

    __str__ = __repr__


def _repeats_by_prestar(pds, head):
    p, g = head
    marker = _Marker()
    stack = pds.stack | {marker}
    lifted = PushdownSystem(pds.states, stack, pds.rules)
    a1, a2 = _aux(0), _aux(1)
    edges = {(p, g, a1), (a1, marker, a2)} | {(a1, x, a1) for x in pds.stack}
    target = ConfigAutomaton(pds.states, set(pds.states) | {a1, a2}, edges, {a2})
    reach = pre_star(lifted, target)
    for (p1, g1, q, w) in pds.rules:
        if (p1, g1) == head and reach.accepts(q, w + (marker,)):
            return True
    return False


def has_infinite_run(pds: PushdownSystem, rep=None) -> ConfigAutomaton:
    """Configurations from which the system has an infinite run: the
    predecessors of some repeating head over any stack below it."""
    if rep is None:
        rep = repeating_heads(pds)
    return pre_star(pds, heads_automaton(pds.states, rep, pds.stack))


def dead_configs(pds: PushdownSystem, controls=None) -> ConfigAutomaton:
    """Configurations without a successor: untriggered heads over any stack,
    plus the empty stack.  ``controls`` restricts which control states may
    count as dead."""
    controls = pds.states if controls is None else frozenset(controls)
    triggers = pds.triggers()
    heads = [(p, g) for p in controls for g in pds.stack if (p, g) not in triggers]
    ca = heads_automaton(pds.states, heads, pds.stack)
    return ConfigAutomaton(ca.controls, ca.states, ca.edges, ca.finals | controls)
