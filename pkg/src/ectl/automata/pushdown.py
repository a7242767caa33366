"""Visibly pushdown and real-time pushdown word automata.

Stacks are simulated as tuples with the top at the end; the bottom symbol is
implicit, so the empty tuple means "only the bottom symbol is left".  Rules and
the text format write replacement words top-first.
"""
from __future__ import annotations

import functools
import gc
from collections import deque
from dataclasses import dataclass

from ..errors import CapExceeded, ValidationError
from .finite import fresh_sink


def _frozen(obj, *attrs):
    for attr in attrs:
        object.__setattr__(obj, attr, frozenset(getattr(obj, attr)))


def _without_gc(func):
    """Run ``func`` with the cyclic collector paused.  Determinized automata
    hold millions of small acyclic tuples, and repeated full collections
    while they are built cost more than the construction itself."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        if not gc.isenabled():
            return func(*args, **kwargs)
        gc.disable()
        try:
            return func(*args, **kwargs)
        finally:
            gc.enable()
    return wrapper


def _freeze_table(table):
    return {k: tuple(v) if len(v) == 1 else tuple(sorted(v)) for k, v in table.items()}


@dataclass(frozen=True)
class VisiblyPushdownAutomaton:
    """VPA over the pushdown alphabet ``(calls, returns, internals)``.

    ``call_rules`` are ``(q, a, gamma, q')`` pushing ``gamma``;
    ``return_rules`` are ``(q, a, gamma, q')`` popping ``gamma``, where a
    return on ``bottom`` reads it and leaves it in place;
    ``internal_rules`` are ``(q, a, q')``.
    """

    kind: str
    calls: frozenset
    returns: frozenset
    internals: frozenset
    states: frozenset
    stack: frozenset
    bottom: str
    call_rules: frozenset
    return_rules: frozenset
    internal_rules: frozenset
    initial: str
    finals: frozenset
    name: str = "A"

    def __post_init__(self):
        _frozen(self, "calls", "returns", "internals", "states", "stack", "call_rules",
                "return_rules", "internal_rules", "finals")
        if self.kind not in ("vpa", "dvpa"):
            raise ValidationError(f"visibly pushdown kind must be vpa or dvpa, not {self.kind!r}")
        if (self.calls & self.returns) or (self.calls & self.internals) or (self.returns & self.internals):
            raise ValidationError(f"{self.name}: calls, returns and internals must be disjoint")
        stack = self.stack | {self.bottom}
        object.__setattr__(self, "stack", stack)
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} is not declared")
        if not self.finals <= self.states:
            raise ValidationError(f"final states {sorted(self.finals - self.states)} are not declared")
        if not self._bulk_valid(stack):
            self._find_invalid_rule(stack)
        calls, rets, ints = {}, {}, {}
        for (q, a, g, r) in self.call_rules:
            key = (q, a)
            if key in calls:
                calls[key].append((g, r))
            else:
                calls[key] = [(g, r)]
        for (q, a, g, r) in self.return_rules:
            key = (q, a, g)
            if key in rets:
                rets[key].append(r)
            else:
                rets[key] = [r]
        for (q, a, r) in self.internal_rules:
            key = (q, a)
            if key in ints:
                ints[key].append(r)
            else:
                ints[key] = [r]
        if self.kind == "dvpa":
            for table in (calls, rets, ints):
                for key, targets in table.items():
                    if len(targets) > 1:
                        raise ValidationError(f"dvpa {self.name} has two rules for {key}")
        object.__setattr__(self, "_calls", _freeze_table(calls))
        object.__setattr__(self, "_rets", _freeze_table(rets))
        object.__setattr__(self, "_ints", _freeze_table(ints))

    def _bulk_valid(self, stack) -> bool:
        """Set-level version of the rule checks; large determinized outputs
        would spend most of their construction time in per-rule checks."""
        cr, rr, ir = self.call_rules, self.return_rules, self.internal_rules
        mentioned = ({q for q, _, _, _ in cr} | {r for _, _, _, r in cr} | {q for q, _, _, _ in rr}
                     | {r for _, _, _, r in rr} | {q for q, _, _ in ir} | {r for _, _, r in ir})
        pushed = {g for _, _, g, _ in cr}
        return (mentioned <= self.states
                and {a for _, a, _, _ in cr} <= self.calls
                and {a for _, a, _, _ in rr} <= self.returns
                and {a for _, a, _ in ir} <= self.internals
                and self.bottom not in pushed and pushed <= stack
                and {g for _, _, g, _ in rr} <= stack)

    def _find_invalid_rule(self, stack):
        for (q, a, g, r) in self.call_rules:
            self._check(q, r, a, self.calls, "call")
            if g == self.bottom:
                raise ValidationError(f"{self.name}: call rule at {q} pushes the bottom symbol")
            if g not in stack:
                raise ValidationError(f"{self.name}: undeclared stack symbol {g!r}")
        for (q, a, g, r) in self.return_rules:
            self._check(q, r, a, self.returns, "return")
            if g not in stack:
                raise ValidationError(f"{self.name}: undeclared stack symbol {g!r}")
        for (q, a, r) in self.internal_rules:
            self._check(q, r, a, self.internals, "internal")

    def _check(self, q, r, a, letters, what):
        if q not in self.states or r not in self.states:
            raise ValidationError(f"{self.name}: {what} rule {q} {a} {r} mentions an undeclared state")
        if a not in letters:
            raise ValidationError(f"{self.name}: {what} rule uses {a!r}, which is not a {what} letter")

    @property
    def alphabet(self) -> frozenset:
        return self.calls | self.returns | self.internals

    @property
    def size(self) -> int:
        return len(self.states) + len(self.call_rules) + len(self.return_rules) + len(self.internal_rules)

    @property
    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for t in (self._calls, self._rets, self._ints) for v in t.values())

    @property
    def complete(self) -> bool:
        if not self.is_deterministic:
            return False
        for q in self.states:
            if any((q, a) not in self._calls for a in self.calls):
                return False
            if any((q, a) not in self._ints for a in self.internals):
                return False
            if any((q, a, g) not in self._rets for a in self.returns for g in self.stack):
                return False
        return True

    def step(self, config, a):
        """Successor configurations of ``(q, stack)`` on letter ``a``."""
        q, stack = config
        if a in self.calls:
            return [(r, stack + (g,)) for g, r in self._calls.get((q, a), ())]
        if a in self.returns:
            top = stack[-1] if stack else self.bottom
            rest = stack[:-1]
            return [(r, rest) for r in self._rets.get((q, a, top), ())]
        if a in self.internals:
            return [(r, stack) for r in self._ints.get((q, a), ())]
        raise ValidationError(f"letter {a!r} is not in the alphabet of {self.name}")

    def accepts(self, word) -> bool:
        alphabet = self.alphabet
        for b in word:
            if b not in alphabet:
                raise ValidationError(f"letter {b!r} is not in the alphabet of {self.name}")
        configs = {(self.initial, ())}
        for a in word:
            configs = {c for cfg in configs for c in self.step(cfg, a)}
            if not configs:
                return False
        return any(q in self.finals for q, _ in configs)


@dataclass(frozen=True)
class PushdownWordAutomaton:
    """Real-time PDA accepting by final state with any stack.

    ``rules`` are ``(q, a, gamma, q', w)`` with ``w`` a top-first tuple.  A
    rule reading the bottom symbol must put it back as the last letter of
    ``w``; no other rule may mention the bottom symbol in ``w``.
    """

    kind: str
    states: frozenset
    alphabet: frozenset
    stack: frozenset
    bottom: str
    rules: frozenset
    initial: str
    finals: frozenset
    name: str = "A"

    def __post_init__(self):
        _frozen(self, "states", "alphabet", "stack", "finals")
        object.__setattr__(self, "rules", frozenset((q, a, g, r, tuple(w)) for (q, a, g, r, w) in self.rules))
        if self.kind not in ("pda", "dpda"):
            raise ValidationError(f"pushdown kind must be pda or dpda, not {self.kind!r}")
        stack = self.stack | {self.bottom}
        object.__setattr__(self, "stack", stack)
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} is not declared")
        if not self.finals <= self.states:
            raise ValidationError(f"final states {sorted(self.finals - self.states)} are not declared")
        table = {}
        for rule in self.rules:
            q, a, g, r, w = rule
            if q not in self.states or r not in self.states:
                raise ValidationError(f"{self.name}: rule {rule} mentions an undeclared state")
            if a not in self.alphabet:
                raise ValidationError(f"{self.name}: rule {rule} uses undeclared letter {a!r}")
            for x in (g,) + w:
                if x not in stack:
                    raise ValidationError(f"{self.name}: undeclared stack symbol {x!r}")
            if g == self.bottom:
                if not w or w[-1] != self.bottom or self.bottom in w[:-1]:
                    raise ValidationError(
                        f"{self.name}: rule {rule} must keep the bottom symbol at the bottom")
            elif self.bottom in w:
                raise ValidationError(f"{self.name}: rule {rule} pushes the bottom symbol")
            table.setdefault((q, a, g), []).append((r, w))
        if self.kind == "dpda":
            for key, targets in table.items():
                if len(targets) > 1:
                    raise ValidationError(f"dpda {self.name} has two rules for {key}")
        object.__setattr__(self, "_table", {k: tuple(sorted(v)) for k, v in table.items()})

    @property
    def size(self) -> int:
        return len(self.states) + len(self.rules)

    @property
    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self._table.values())

    @property
    def complete(self) -> bool:
        return self.is_deterministic and all(
            (q, a, g) in self._table for q in self.states for a in self.alphabet for g in self.stack)

    def step(self, config, a):
        if a not in self.alphabet:
            raise ValidationError(f"letter {a!r} is not in the alphabet of {self.name}")
        q, stack = config
        top = stack[-1] if stack else self.bottom
        rest = stack[:-1]
        out = []
        for r, w in self._table.get((q, a, top), ()):
            if top == self.bottom:
                w = w[:-1]
            out.append((r, rest + tuple(reversed(w))))
        return out

    def accepts(self, word) -> bool:
        for b in word:
            if b not in self.alphabet:
                raise ValidationError(f"letter {b!r} is not in the alphabet of {self.name}")
        configs = {(self.initial, ())}
        for a in word:
            configs = {c for cfg in configs for c in self.step(cfg, a)}
            if not configs:
                return False
        return any(q in self.finals for q, _ in configs)


# --------------------------------------------------------------------------
# completion and complement

def _assemble_dvpa(like: VisiblyPushdownAutomaton, states, stack, tables, initial, finals,
                   name) -> VisiblyPushdownAutomaton:
    """Build a dvpa from deterministic lookup tables without re-checking it.

    Only for outputs of the constructions below, whose rules are valid by
    construction; the checks and indexing in ``__post_init__`` would
    otherwise dominate the cost of large determinized automata.  ``tables``
    maps ``(q, a)`` for calls to ``(gamma, q')``, ``(q, a, gamma)`` for
    returns to ``q'`` and ``(q, a)`` for internals to ``q'``.
    """
    calls, rets, ints = tables
    aut = object.__new__(VisiblyPushdownAutomaton)
    fields = {
        "kind": "dvpa", "calls": like.calls, "returns": like.returns, "internals": like.internals,
        "states": frozenset(states), "stack": frozenset(stack) | {like.bottom},
        "bottom": like.bottom,
        "call_rules": frozenset((q, a, g, r) for (q, a), (g, r) in calls.items()),
        "return_rules": frozenset((q, a, g, r) for (q, a, g), r in rets.items()),
        "internal_rules": frozenset((q, a, r) for (q, a), r in ints.items()),
        "initial": initial, "finals": frozenset(finals), "name": name,
        "_calls": {k: (v,) for k, v in calls.items()},
        "_rets": {k: (v,) for k, v in rets.items()},
        "_ints": {k: (v,) for k, v in ints.items()},
    }
    for key, value in fields.items():
        object.__setattr__(aut, key, value)
    return aut


@_without_gc
def complete_dvpa(vpa: VisiblyPushdownAutomaton) -> VisiblyPushdownAutomaton:
    """Add a sink for every missing trigger.  Calls into the sink still push
    (visibility forces it) and returns into the sink still pop."""
    if not vpa.is_deterministic:
        raise ValidationError(f"cannot complete nondeterministic automaton {vpa.name}")
    if vpa.complete:
        return vpa
    sink = fresh_sink(vpa.states)
    states = vpa.states | {sink}
    stack = set(vpa.stack)
    pushable = sorted(stack - {vpa.bottom})
    if pushable:
        filler = pushable[0]
    else:
        filler = fresh_sink(stack)
        stack.add(filler)
    calls = {k: v[0] for k, v in vpa._calls.items()}
    rets = {k: v[0] for k, v in vpa._rets.items()}
    ints = {k: v[0] for k, v in vpa._ints.items()}
    for q in states:
        fresh = q == sink
        for a in vpa.calls:
            if fresh or (q, a) not in calls:
                calls[(q, a)] = (filler, sink)
        for a in vpa.internals:
            if fresh or (q, a) not in ints:
                ints[(q, a)] = sink
        for a in vpa.returns:
            for g in stack:
                if fresh or (q, a, g) not in rets:
                    rets[(q, a, g)] = sink
    return _assemble_dvpa(vpa, states, stack, (calls, rets, ints), vpa.initial, vpa.finals,
                          vpa.name)


def complete_dpda(pda: PushdownWordAutomaton) -> PushdownWordAutomaton:
    if not pda.is_deterministic:
        raise ValidationError(f"cannot complete nondeterministic automaton {pda.name}")
    if pda.complete:
        return pda
    sink = fresh_sink(pda.states)
    states = pda.states | {sink}
    rules = set(pda.rules)
    for q in states:
        for a in pda.alphabet:
            for g in pda.stack:
                if q == sink or (q, a, g) not in pda._table:
                    rules.add((q, a, g, sink, (g,)))
    return PushdownWordAutomaton("dpda", states, pda.alphabet, pda.stack, pda.bottom, rules,
                                 pda.initial, pda.finals, name=pda.name)


def complement_dvpa(vpa: VisiblyPushdownAutomaton) -> VisiblyPushdownAutomaton:
    if vpa.kind != "dvpa" or not vpa.complete:
        raise ValidationError(f"complement needs a complete dvpa; {vpa.name} is not one")
    return VisiblyPushdownAutomaton("dvpa", vpa.calls, vpa.returns, vpa.internals, vpa.states,
                                    vpa.stack, vpa.bottom, vpa.call_rules, vpa.return_rules,
                                    vpa.internal_rules, vpa.initial, vpa.states - vpa.finals,
                                    name=f"~{vpa.name}")


def complement_dpda(pda: PushdownWordAutomaton) -> PushdownWordAutomaton:
    # real-time and complete: every word has exactly one run
    if pda.kind != "dpda" or not pda.complete:
        raise ValidationError(f"complement needs a complete dpda; {pda.name} is not one")
    return PushdownWordAutomaton("dpda", pda.states, pda.alphabet, pda.stack, pda.bottom,
                                 pda.rules, pda.initial, pda.states - pda.finals,
                                 name=f"~{pda.name}")


def vpa_with_internals(vpa: VisiblyPushdownAutomaton, letters) -> VisiblyPushdownAutomaton:
    extra = frozenset(letters) - vpa.alphabet
    if not extra:
        return vpa
    return VisiblyPushdownAutomaton(vpa.kind, vpa.calls, vpa.returns, vpa.internals | extra,
                                    vpa.states, vpa.stack, vpa.bottom, vpa.call_rules,
                                    vpa.return_rules, vpa.internal_rules, vpa.initial,
                                    vpa.finals, name=vpa.name)


def pda_with_alphabet(pda: PushdownWordAutomaton, letters) -> PushdownWordAutomaton:
    extra = frozenset(letters) - pda.alphabet
    if not extra:
        return pda
    return PushdownWordAutomaton(pda.kind, pda.states, pda.alphabet | extra, pda.stack,
                                 pda.bottom, pda.rules, pda.initial, pda.finals, name=pda.name)


# --------------------------------------------------------------------------
# determinization

def _record_name(triples) -> str:
    return "<" + ",".join(f"{p}>{g}>{q}" for p, g, q in sorted(triples, key=str)) + ">"


def _pairs_name(pairs) -> str:
    return "{" + ",".join(f"{p}>{q}" for p, q in sorted(pairs)) + "}"


@_without_gc
def determinize_vpa(vpa: VisiblyPushdownAutomaton, cap=None) -> VisiblyPushdownAutomaton:
    """Summary-set determinization.

    A control state is a set of pairs ``(q, q')``: ``q`` is a state the input
    automaton could be in right after the innermost pending call (or an
    initial state at top level) and ``q'`` a state reachable from it on the
    well-matched word read since.  A call pushes a record of which states it
    entered from each caller row and with which input stack symbol, which is
    all a return needs to splice the caller's summary back.

    Summaries are held as tuples of row bitmasks (row ``i`` lists the ``q'``
    for ``q = order[i]``).  Only reachable (state, top-of-stack) contexts are
    explored, so the result is deterministic but not necessarily complete.
    """
    order = sorted(vpa.states, key=str)
    index = {q: i for i, q in enumerate(order)}
    n = len(order)
    bottom = vpa.bottom

    def matrix(pairs):
        rows = [0] * n
        for (q, r) in pairs:
            rows[index[q]] |= 1 << index[r]
        return tuple(rows)

    internal = {a: matrix((q, r) for (q, b, r) in vpa.internal_rules if b == a)
                for a in vpa.internals}
    call_any = {c: matrix((q, r) for (q, b, _, r) in vpa.call_rules if b == c) for c in vpa.calls}
    pushes = sorted({g for (_, _, g, _) in vpa.call_rules}, key=str)
    call_by = {(c, g): matrix((q, r) for (q, b, h, r) in vpa.call_rules if b == c and h == g)
               for c in vpa.calls for g in pushes}
    ret_by = {(a, g): matrix((q, r) for (q, b, h, r) in vpa.return_rules if b == a and h == g)
              for a in vpa.returns for g in list(pushes) + [bottom]}

    # a pair whose current state can never reach a final state, whatever the
    # stack does, cannot contribute to acceptance and is dropped
    back = {}
    for (q, _, _, r) in vpa.call_rules | vpa.return_rules:
        back.setdefault(r, set()).add(q)
    for (q, _, r) in vpa.internal_rules:
        back.setdefault(r, set()).add(q)
    live_set = set(vpa.finals)
    todo = list(live_set)
    while todo:
        for q in back.get(todo.pop(), ()):
            if q not in live_set:
                live_set.add(q)
                todo.append(q)
    live = sum(1 << index[q] for q in live_set)

    def image(m, mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= m[low.bit_length() - 1]
            mask ^= low
        return out

    def lookup(m):
        # image of every subset at once, while the subsets are few enough
        if n > 12:
            return lambda mask: image(m, mask)
        table = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            table[mask] = table[mask ^ low] | m[low.bit_length() - 1]
        return table.__getitem__

    internal = {a: lookup(m) for a, m in internal.items()}
    call_any = {c: lookup(m) for c, m in call_any.items()}
    call_by = {key: lookup(m) for key, m in call_by.items()}
    ret_by = {key: lookup(m) for key, m in ret_by.items()}
    images = {}       # summary -> image function of its rows
    after_return = {}

    summaries, sid = [], {}

    def summary_id(rows):
        key = sid.get(rows)
        if key is None:
            key = sid[rows] = len(summaries)
            summaries.append(rows)
            if cap is not None and len(summaries) > cap:
                raise CapExceeded(f"determinizing {vpa.name} exceeded the cap of {cap} states", cap)
        return key

    # A pushed symbol records, per stack symbol of the input and per caller
    # row, the states the call entered.  Returns read nothing else from the
    # caller, so calls with equal records share one symbol.
    symbols, symid = [], {}

    def symbol_id(s, c):
        record = tuple(tuple(call_by[(c, g)](row) & live for row in summaries[s]) for g in pushes)
        key = symid.get(record)
        if key is None:
            key = symid[record] = len(symbols)
            symbols.append(record)
        return key

    init = index[vpa.initial]
    start = summary_id(tuple((1 << init) & live if i == init else 0 for i in range(n)))
    BOTTOM = -1
    ints, calls, rets = [], [], []
    stack_free = {}   # summary -> [(pushed symbol or None, successor)]
    at_bottom = {}    # summary -> successors of returns on the empty stack
    below = {}        # symbol -> tops that can sit under it
    popped_to = {}    # symbol -> summaries reached by popping it
    flat = []         # symbol -> its record as one tuple of entry masks
    # A context (summary, top) is packed into one int, summary in the high
    # bits and top + 1 in the low ones; the loop below runs once per context
    # and millions of contexts are common.
    SHIFT = 32
    LOW = (1 << SHIFT) - 1
    contexts = {start << SHIFT}
    queue = deque(contexts)

    sorted_internals = sorted(vpa.internals)
    sorted_calls = sorted(vpa.calls)
    sorted_returns = sorted(vpa.returns)
    while queue:
        packed = queue.popleft()
        s, top = packed >> SHIFT, (packed & LOW) - 1
        rows = summaries[s]
        if s not in stack_free:
            # moves that do not depend on the stack are computed once per summary
            moves = []
            for a in sorted_internals:
                m = internal[a]
                nxt = summary_id(tuple(m(row) & live for row in rows))
                ints.append((s, a, nxt))
                moves.append((None, nxt))
            current = 0
            for row in rows:
                current |= row
            for c in sorted_calls:
                targets = call_any[c](current) & live
                nxt = summary_id(tuple(targets & (1 << i) for i in range(n)))
                sym = symbol_id(s, c)
                while len(flat) < len(symbols):
                    flat.append(tuple(e for ent in symbols[len(flat)] for e in ent))
                calls.append((s, c, sym, nxt))
                moves.append((sym, nxt))
            stack_free[s] = moves
        low = packed & LOW
        for (sym, nxt) in stack_free[s]:
            if sym is None:
                key = nxt << SHIFT | low
            else:
                under = below.get(sym)
                if under is None:
                    under = below[sym] = set()
                if low not in under:
                    under.add(low)
                    for after in popped_to.get(sym, ()):
                        other = after << SHIFT | low
                        if other not in contexts:
                            contexts.add(other)
                            queue.append(other)
                key = nxt << SHIFT | (sym + 1)
            if key not in contexts:
                contexts.add(key)
                queue.append(key)
        if top == BOTTOM:
            if s not in at_bottom:
                at_bottom[s] = []
                for a in sorted_returns:
                    m = ret_by[(a, bottom)]
                    nxt = summary_id(tuple(m(row) & live for row in rows))
                    rets.append((s, a, BOTTOM, nxt))
                    at_bottom[s].append(nxt)
            for nxt in at_bottom[s]:
                key = nxt << SHIFT
                if key not in contexts:
                    contexts.add(key)
                    queue.append(key)
            continue
        # where each caller row stands now, per pushed symbol; many contexts
        # land on the same picture, so the return successors are cached by it
        img = images.get(s)
        if img is None:
            img = images[s] = lookup(rows)
        now = tuple(map(img, flat[top]))
        successors = after_return.get(now)
        if successors is None:
            successors = []
            for a in sorted_returns:
                out = [0] * n
                for k, g in enumerate(pushes):
                    rm = ret_by[(a, g)]
                    for i in range(n):
                        y = now[k * n + i]
                        if y:
                            out[i] |= rm(y)
                successors.append(summary_id(tuple(row & live for row in out)))
            after_return[now] = successors
        done = popped_to.get(top)
        if done is None:
            done = popped_to[top] = set()
        for a, nxt in zip(sorted_returns, successors):
            rets.append((s, a, top, nxt))
            if nxt not in done:
                done.add(nxt)
                for under in below.get(top, ()):
                    key = nxt << SHIFT | under
                    if key not in contexts:
                        contexts.add(key)
                        queue.append(key)

    names = [_pairs_name((order[i], order[j]) for i, row in enumerate(rows)
                         for j in range(n) if row >> j & 1) for rows in summaries]
    sym_names = [_record_name((order[i], g, order[j]) for g, ent in zip(pushes, record)
                              for i, mask in enumerate(ent) for j in range(n) if mask >> j & 1)
                 for record in symbols]
    sym_names = ["_" + name if name == bottom else name for name in sym_names]

    def top_name(t):
        return bottom if t == BOTTOM else sym_names[t]

    finals = {names[s] for s, rows in enumerate(summaries)
              if any(row & (1 << index[q]) for row in rows for q in vpa.finals)}
    return _assemble_dvpa(
        vpa, names, set(sym_names),
        ({(names[s], c): (sym_names[g], names[t]) for (s, c, g, t) in calls},
         {(names[s], a, top_name(g)): names[t] for (s, a, g, t) in rets},
         {(names[s], a): names[t] for (s, a, t) in ints}),
        names[start], finals, name=f"det({vpa.name})")
