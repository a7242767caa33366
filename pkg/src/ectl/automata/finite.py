"""DFA/NFA over finite words, with the powerset construction."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..errors import CapExceeded, ValidationError

EPS = None
SINK = "__sink"


@dataclass(frozen=True)
class FiniteAutomaton:
    """A finite-word automaton.  ``transitions`` holds ``(q, letter, q')``
    triples where ``letter is EPS`` marks an epsilon edge (NFA only)."""

    kind: str
    states: frozenset
    alphabet: frozenset
    transitions: frozenset
    initial: str
    finals: frozenset
    name: str = "A"

    def __post_init__(self):
        for attr in ("states", "alphabet", "transitions", "finals"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        if self.kind not in ("dfa", "nfa"):
            raise ValidationError(f"finite automaton kind must be dfa or nfa, not {self.kind!r}")
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} is not declared")
        if not self.finals <= self.states:
            raise ValidationError(f"final states {sorted(self.finals - self.states)} are not declared")
        delta = {}
        for (q, a, r) in self.transitions:
            if q not in self.states or r not in self.states:
                raise ValidationError(f"rule {q} {a} {r} mentions an undeclared state")
            if a is not EPS and a not in self.alphabet:
                raise ValidationError(f"rule {q} {a} {r} uses undeclared letter {a!r}")
            delta.setdefault((q, a), []).append(r)
        delta = {k: tuple(sorted(v)) for k, v in delta.items()}
        if self.kind == "dfa":
            for (q, a), targets in delta.items():
                if a is EPS:
                    raise ValidationError(f"dfa {self.name} has an epsilon rule at {q}")
                if len(targets) > 1:
                    raise ValidationError(f"dfa {self.name} has two {a}-successors of {q}")
        object.__setattr__(self, "_delta", delta)

    def targets(self, q, a) -> tuple:
        return self._delta.get((q, a), ())

    @property
    def is_deterministic(self) -> bool:
        return all(a is not EPS and len(t) == 1 for (_, a), t in self._delta.items())

    @property
    def complete(self) -> bool:
        return self.is_deterministic and all(
            (q, a) in self._delta for q in self.states for a in self.alphabet)

    @property
    def size(self) -> int:
        return len(self.states) + len(self.transitions)

    def has_epsilon(self) -> bool:
        return any(a is EPS for (_, a, _) in self.transitions)

    def epsilon_closure(self, states) -> frozenset:
        seen = set(states)
        todo = list(states)
        while todo:
            q = todo.pop()
            for r in self._delta.get((q, EPS), ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)

    def step(self, current, a) -> frozenset:
        """Letter step on an epsilon-closed state set; returns a closed set."""
        nxt = set()
        for q in current:
            nxt.update(self._delta.get((q, a), ()))
        return self.epsilon_closure(nxt)

    def accepts(self, word) -> bool:
        current = self.epsilon_closure([self.initial])
        for a in word:
            if a not in self.alphabet:
                raise ValidationError(f"letter {a!r} is not in the alphabet of {self.name}")
            current = self.step(current, a)
            if not current:
                return False
        return bool(current & self.finals)


def subset_name(states) -> str:
    return "{" + ",".join(sorted(states)) + "}"


def determinize_nfa(nfa: FiniteAutomaton, alphabet=None, cap=None) -> FiniteAutomaton:
    """Powerset construction over epsilon-closed reachable subsets.

    The result is a complete DFA; the empty subset ``{}`` serves as the sink
    when some letter leads nowhere.
    """
    sigma = frozenset(nfa.alphabet if alphabet is None else nfa.alphabet | frozenset(alphabet))
    letters = sorted(sigma)
    start = nfa.epsilon_closure([nfa.initial])
    seen = {start: subset_name(start)}
    queue = deque([start])
    transitions = set()
    while queue:
        current = queue.popleft()
        for a in letters:
            nxt = nfa.step(current, a) if a in nfa.alphabet else frozenset()
            if nxt not in seen:
                seen[nxt] = subset_name(nxt)
                if cap is not None and len(seen) > cap:
                    raise CapExceeded(
                        f"determinizing {nfa.name} exceeded the cap of {cap} states", cap)
                queue.append(nxt)
            transitions.add((seen[current], a, seen[nxt]))
    finals = {name for subset, name in seen.items() if subset & nfa.finals}
    return FiniteAutomaton("dfa", seen.values(), sigma, transitions, seen[start], finals,
                           name=f"det({nfa.name})")


def remove_epsilon(nfa: FiniteAutomaton) -> FiniteAutomaton:
    """Language-equivalent automaton on the same states without epsilon edges."""
    if not nfa.has_epsilon():
        return nfa
    closure = {q: nfa.epsilon_closure([q]) for q in nfa.states}
    transitions = set()
    for q in nfa.states:
        for a in nfa.alphabet:
            for r in nfa.step(closure[q], a):
                transitions.add((q, a, r))
    finals = {q for q in nfa.states if closure[q] & nfa.finals}
    return FiniteAutomaton("nfa", nfa.states, nfa.alphabet, transitions, nfa.initial, finals,
                           name=nfa.name)


def fresh_sink(states) -> str:
    sink = SINK
    while sink in states:
        sink = "_" + sink
    return sink


def complete_dfa(dfa: FiniteAutomaton) -> FiniteAutomaton:
    if dfa.kind != "dfa":
        raise ValidationError(f"cannot complete nondeterministic automaton {dfa.name}")
    if dfa.complete:
        return dfa
    sink = fresh_sink(dfa.states)
    states = dfa.states | {sink}
    transitions = set(dfa.transitions)
    for q in states:
        for a in dfa.alphabet:
            if q == sink or not dfa.targets(q, a):
                transitions.add((q, a, sink))
    return FiniteAutomaton("dfa", states, dfa.alphabet, transitions, dfa.initial, dfa.finals,
                           name=dfa.name)


def complement_dfa(dfa: FiniteAutomaton) -> FiniteAutomaton:
    if dfa.kind != "dfa" or not dfa.complete:
        raise ValidationError(f"complement needs a complete dfa; {dfa.name} is not one")
    return FiniteAutomaton("dfa", dfa.states, dfa.alphabet, dfa.transitions, dfa.initial,
                           dfa.states - dfa.finals, name=f"~{dfa.name}")


def with_alphabet(aut: FiniteAutomaton, letters) -> FiniteAutomaton:
    extra = frozenset(letters) - aut.alphabet
    if not extra:
        return aut
    return FiniteAutomaton(aut.kind, aut.states, aut.alphabet | extra, aut.transitions,
                           aut.initial, aut.finals, name=aut.name)


def sigma_automaton(alphabet, name="Sigma") -> FiniteAutomaton:
    """Accepts exactly the one-letter words."""
    return FiniteAutomaton("dfa", {"s0", "s1"}, alphabet,
                           {("s0", a, "s1") for a in alphabet}, "s0", {"s1"}, name=name)


def sigma_star_automaton(alphabet, name="Sigma*") -> FiniteAutomaton:
    return FiniteAutomaton("dfa", {"s0"}, alphabet, {("s0", a, "s0") for a in alphabet},
                           "s0", {"s0"}, name=name)


def letters_automaton(letters, alphabet, name=None) -> FiniteAutomaton:
    """Accepts the one-letter words drawn from ``letters``."""
    letters = frozenset(letters)
    name = name or "{" + ",".join(sorted(letters)) + "}"
    return FiniteAutomaton("dfa", {"s0", "s1"}, frozenset(alphabet) | letters,
                           {("s0", a, "s1") for a in letters}, "s0", {"s1"}, name=name)
