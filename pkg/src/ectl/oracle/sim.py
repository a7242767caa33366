"""A naive configuration-set simulator for every automaton kind.

It reads the public rule sets directly and tracks all reachable
configurations at once; nothing here is shared with the engines.
"""
from __future__ import annotations


class Runner:
    """Simulates ``aut`` on the fly.  A configuration is ``(state, stack)``
    where ``stack`` is a tuple with the top last and the bottom symbol left
    implicit."""

    def __init__(self, aut):
        self.aut = aut
        self.kind = aut.kind
        self.finals = frozenset(aut.finals)
        moves = {}
        eps = {}
        if self.kind in ("dfa", "nfa"):
            for (q, a, r) in aut.transitions:
                if a is None:
                    eps.setdefault(q, set()).add(r)
                else:
                    moves.setdefault((q, a), []).append(r)
        elif self.kind in ("vpa", "dvpa"):
            self.calls = frozenset(aut.calls)
            self.returns = frozenset(aut.returns)
            for (q, a, g, r) in aut.call_rules:
                moves.setdefault(("call", q, a), []).append((g, r))
            for (q, a, g, r) in aut.return_rules:
                moves.setdefault(("ret", q, a, g), []).append(r)
            for (q, a, r) in aut.internal_rules:
                moves.setdefault(("int", q, a), []).append(r)
        else:
            for (q, a, g, r, w) in aut.rules:
                moves.setdefault((q, a, g), []).append((r, w))
        self.moves = moves
        self.eps = eps

    def _closure(self, states):
        seen = set(states)
        todo = list(states)
        while todo:
            q = todo.pop()
            for r in self.eps.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    def start(self) -> frozenset:
        if self.kind in ("dfa", "nfa"):
            return frozenset((q, ()) for q in self._closure({self.aut.initial}))
        return frozenset({(self.aut.initial, ())})

    def accepting(self, configs) -> bool:
        return any(q in self.finals for q, _ in configs)

    def step(self, configs, a) -> frozenset:
        out = set()
        if self.kind in ("dfa", "nfa"):
            nxt = set()
            for q, _ in configs:
                nxt.update(self.moves.get((q, a), ()))
            return frozenset((q, ()) for q in self._closure(nxt))
        bottom = self.aut.bottom
        for q, stack in configs:
            top = stack[-1] if stack else bottom
            if self.kind in ("vpa", "dvpa"):
                if a in self.calls:
                    for g, r in self.moves.get(("call", q, a), ()):
                        out.add((r, stack + (g,)))
                elif a in self.returns:
                    for r in self.moves.get(("ret", q, a, top), ()):
                        out.add((r, stack[:-1]))
                else:
                    for r in self.moves.get(("int", q, a), ()):
                        out.add((r, stack))
            else:
                for r, w in self.moves.get((q, a, top), ()):
                    rest = stack[:-1] if stack else ()
                    pushed = tuple(x for x in reversed(w) if x != bottom)
                    out.add((r, rest + pushed))
        return frozenset(out)

    def accepts(self, word) -> bool:
        configs = self.start()
        for a in word:
            configs = self.step(configs, a)
            if not configs:
                return False
        return self.accepting(configs)
