"""Finite labeled transition systems."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ValidationError

IDENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class LabeledTransitionSystem:
    """A finite LTS ``(S, ->, l)`` over the action alphabet ``actions``.

    ``designated`` lists the states queries are evaluated at, in file order.
    Transitions are a set: duplicates collapse.
    """

    states: frozenset
    actions: frozenset
    transitions: frozenset
    labeling: dict = field(hash=False, compare=True)
    designated: tuple = ()
    name: str = "lts"
    props: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "actions", frozenset(self.actions))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "designated", tuple(self.designated))
        labeling = {s: frozenset(self.labeling.get(s, ())) for s in self.states}
        extra = set(self.labeling) - self.states
        if extra:
            raise ValidationError(f"labeling mentions undeclared states {sorted(extra)}")
        object.__setattr__(self, "labeling", labeling)
        props = frozenset(self.props).union(*labeling.values()) if labeling else frozenset(self.props)
        object.__setattr__(self, "props", props)
        for (s, a, t) in self.transitions:
            if s not in self.states:
                raise ValidationError(f"transition source {s!r} is not a declared state")
            if t not in self.states:
                raise ValidationError(f"transition target {t!r} is not a declared state")
            if a not in self.actions:
                raise ValidationError(f"transition action {a!r} is not a declared action")
        for s in self.designated:
            if s not in self.states:
                raise ValidationError(f"designated state {s!r} is not a declared state")
        succ = {s: [] for s in self.states}
        for (s, a, t) in sorted(self.transitions):
            succ[s].append((a, t))
        object.__setattr__(self, "_succ", {s: tuple(v) for s, v in succ.items()})

    def __hash__(self):
        return hash((self.states, self.actions, self.transitions, self.designated))

    def _check_state(self, s):
        if s not in self.states:
            raise ValidationError(f"unknown state {s!r}")

    def successors(self, s) -> frozenset:
        """All ``(action, target)`` pairs leaving ``s``."""
        self._check_state(s)
        return frozenset(self._succ[s])

    def ordered_successors(self, s) -> tuple:
        self._check_state(s)
        return self._succ[s]

    def is_dead_end(self, s) -> bool:
        self._check_state(s)
        return not self._succ[s]

    def sat(self, prop) -> frozenset:
        """States whose label contains ``prop``."""
        return frozenset(s for s in self.states if prop in self.labeling[s])

    def sorted_states(self) -> list:
        return sorted(self.states, key=_natural_key)


def successors(lts: LabeledTransitionSystem, s) -> frozenset:
    return lts.successors(s)


def is_dead_end(lts: LabeledTransitionSystem, s) -> bool:
    return lts.is_dead_end(s)


def _natural_key(name):
    parts = re.split(r"(\d+)", str(name))
    return [int(p) if p.isdigit() else p for p in parts]


def natural_key(name):
    """Sort key that orders ``s2`` before ``s10``."""
    return _natural_key(name)
