"""Bottom-up model checking over a finite LTS.

Every core subformula gets a satisfying state set, children first.  An
existential until is reduced to backward reachability in the product of the
LTS with the annotating automaton; an existential release is reduced to the
existence of a maximal run that avoids a "bad" control state in a product
with a deterministic, complete automaton.
"""
from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

from . import automata as aut_mod
from .automata.ops import initial_finals, lift
from .errors import ValidationError
from .lts import LabeledTransitionSystem
from .logic import And, Const, Formula, Not, Or, Prop, Release, Until, classify, desugar, post_order, to_text
from .pds import (ConfigAutomaton, PushdownSystem, dead_configs, has_infinite_run, normalize, rerooted,
                  pre_star, union, witness_run)

DEFAULT_CAP = 1 << 16
GOOD, BAD = "g", "b"


@dataclass
class Witness:
    """A finite path ``states[0] -actions[0]-> states[1] ...`` whose action
    word is accepted by the until automaton."""

    states: list
    actions: list

    def as_sequence(self) -> list:
        seq = [self.states[0]]
        for a, s in zip(self.actions, self.states[1:]):
            seq += [a, s]
        return seq


@dataclass
class CheckResult:
    formula: Formula
    core: Formula
    table: dict
    diagnostics: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def satisfying(self) -> frozenset:
        return self.table[self.core]

    def holds(self, state) -> bool:
        return state in self.table[self.core]

    def sat(self, formula) -> frozenset:
        return self.table[desugar(formula)]


# --------------------------------------------------------------------------
# until

class _UntilProduct:
    def __init__(self, lts, sat_x, aut, sat_y):
        rules, stack, bottom = lift(aut)
        q0, finals = initial_finals(aut)
        by_letter = defaultdict(list)
        for (p, a, g, q, w) in rules:
            by_letter[(p, a)].append((g, q, w))
        controls = {(q0, s): None for s in lts.sorted_states()}
        todo = list(controls)
        pds_rules = []
        labels = {}
        while todo:
            p, s = todo.pop()
            if s not in sat_x:
                continue
            for a, t in lts.ordered_successors(s):
                for g, q, w in by_letter.get((p, a), ()):
                    rule = ((p, s), g, (q, t), w)
                    pds_rules.append(rule)
                    labels[rule] = (s, a, t)
                    if (q, t) not in controls:
                        controls[(q, t)] = None
                        todo.append((q, t))
        self.q0, self.bottom = q0, bottom
        self.pds = normalize(PushdownSystem(controls, stack, pds_rules, bottom=bottom, labels=labels))
        accept = "aux:0"
        goals = [c for c in controls if c[0] in finals and c[1] in sat_y]
        edges = {(c, g, accept) for c in goals for g in stack} | {(accept, g, accept) for g in stack}
        target = ConfigAutomaton(self.pds.states, set(self.pds.states) | {accept}, edges,
                                 set(goals) | {accept})
        self.reach = pre_star(self.pds, target)
        self.result = frozenset(s for s in lts.states
                                if self.reach.accepts((q0, s), (bottom,)))

    def stats(self):
        return {"controls": len(self.pds.states), "rules": len(self.pds.rules),
                "saturated_edges": len(self.reach.edges)}

    def witness(self, s) -> Witness:
        run = witness_run(self.reach, (self.q0, s), (self.bottom,))
        if run is None:
            raise ValidationError(f"state {s!r} does not satisfy the until formula")
        states, actions = [s], []
        for rule in run:
            label = self.pds.labels.get(rule)
            if label is not None:
                actions.append(label[1])
                states.append(label[2])
        return Witness(states, actions)


def check_eu(lts: LabeledTransitionSystem, sat_x, aut, sat_y) -> frozenset:
    """States with a path whose action word up to some position is in
    ``L(aut)``, ending in ``sat_y`` and passing only ``sat_x`` before that."""
    return _UntilProduct(lts, frozenset(sat_x), aut, frozenset(sat_y)).result


def extract_witness(lts, sat_x, aut, sat_y, state) -> Witness:
    return _UntilProduct(lts, frozenset(sat_x), aut, frozenset(sat_y)).witness(state)


# --------------------------------------------------------------------------
# release

def prepare_release(aut, alphabet, cap=DEFAULT_CAP):
    """Deterministic, complete automaton over ``alphabet`` with the same
    language; NFAs and VPAs are determinized explicitly."""
    if aut.kind == "pda":
        raise ValidationError(f"{aut.name}: release needs a deterministic automaton")
    det = aut_mod.determinize(aut, cap=cap)
    return aut_mod.complete(aut_mod.with_letters(det, alphabet))


class _ReleaseProduct:
    def __init__(self, lts, sat_x, aut, sat_y):
        if aut.kind not in aut_mod.DETERMINISTIC_KINDS:
            raise ValidationError(f"{aut.name}: release needs a deterministic automaton")
        if not aut.complete or not lts.actions <= aut.alphabet:
            aut = aut_mod.complete(aut_mod.with_letters(aut, lts.actions))
        rules, stack, bottom = lift(aut)
        q0, finals = initial_finals(aut)
        by_letter = defaultdict(list)
        for (p, a, g, q, w) in rules:
            by_letter[(p, a)].append((g, q, w))
        stack_order = sorted(stack)
        controls = {(q0, s): None for s in lts.sorted_states()}
        todo = list(controls)
        pds_rules = []
        while todo:
            p, s = todo.pop()
            final = p in finals
            if s in sat_x and (not final or s in sat_y):
                pds_rules.extend(((p, s), g, GOOD, (g,)) for g in stack_order)
                continue
            if final and s not in sat_y:
                pds_rules.extend(((p, s), g, BAD, (g,)) for g in stack_order)
                continue
            for a, t in lts.ordered_successors(s):
                for g, q, w in by_letter.get((p, a), ()):
                    pds_rules.append(((p, s), g, (q, t), w))
                    if (q, t) not in controls:
                        controls[(q, t)] = None
                        todo.append((q, t))
        originals = set(controls) | {GOOD}
        full = normalize(PushdownSystem(originals | {BAD}, stack, pds_rules, bottom=bottom))
        safe = full.without(lambda r: r[2] == BAD)
        halted = dead_configs(full, controls=originals)
        infinite = has_infinite_run(safe)
        self.pds = safe
        self.reach = pre_star(safe, union(halted, rerooted(infinite)))
        self.result = frozenset(s for s in lts.states if self.reach.accepts((q0, s), (bottom,)))

    def stats(self):
        return {"controls": len(self.pds.states), "rules": len(self.pds.rules),
                "saturated_edges": len(self.reach.edges)}


def check_er(lts: LabeledTransitionSystem, sat_x, aut, sat_y) -> frozenset:
    """States with a maximal path on which every prefix whose word is in
    ``L(aut)`` ends in ``sat_y`` or is preceded by a ``sat_x`` state.

    ``aut`` must be deterministic; it is completed over the LTS actions when
    it is not already complete.
    """
    return _ReleaseProduct(lts, frozenset(sat_x), aut, frozenset(sat_y)).result


# --------------------------------------------------------------------------
# driver

def check(lts: LabeledTransitionSystem, formula: Formula, env, cap=DEFAULT_CAP,
          witness_states=(), dump_ca=None) -> CheckResult:
    """Label every subformula of ``desugar(formula)`` bottom-up.

    ``witness_states`` asks for until witnesses at those states when the
    top-level core formula is an until.  ``dump_ca``, when a list, receives
    ``(node text, saturated automaton)`` pairs.
    """
    started = time.perf_counter()
    core = desugar(formula)
    plan = {step.node: step for step in classify(core, env)}
    table = {}
    nodes = []
    everything = frozenset(lts.states)
    products = {}
    for node in post_order(core):
        t0 = time.perf_counter()
        if isinstance(node, Prop):
            sat = lts.sat(node.name)
        elif isinstance(node, Const):
            sat = everything if node.value else frozenset()
        elif isinstance(node, Not):
            sat = everything - table[node.body]
        elif isinstance(node, And):
            sat = table[node.left] & table[node.right]
        elif isinstance(node, Or):
            sat = table[node.left] | table[node.right]
        elif isinstance(node, Until):
            aut = env.resolve(node.lang)
            product = _UntilProduct(lts, table[node.left], aut, table[node.right])
            products[node] = product
            sat = product.result
        elif isinstance(node, Release):
            step = plan[node]
            aut = env.resolve(node.lang)
            before = aut_mod.size(aut)
            key = (aut.name, "determinize", "complete", tuple(sorted(lts.actions)))
            aut = _cached(env, key, lambda a=aut: prepare_release(a, lts.actions, cap))
            product = _ReleaseProduct(lts, table[node.left], aut, table[node.right])
            products[node] = product
            sat = product.result
            sizes = {"transform": step.transform, "size_before": before,
                     "size_after": aut_mod.size(aut)}
        else:
            raise ValidationError(f"unexpected node {node!r} in a core formula")
        table[node] = frozenset(sat)
        if isinstance(node, (Until, Release)):
            info = products[node].stats()
            info.update(node=to_text(node), engine=plan[node].engine,
                        automaton=plan[node].automaton, seconds=time.perf_counter() - t0)
            if isinstance(node, Release):
                info.update(sizes)
            nodes.append(info)
            if dump_ca is not None:
                dump_ca.append((to_text(node), products[node].reach))
    witnesses = {}
    if isinstance(core, Until):
        for s in witness_states:
            if s in table[core]:
                witnesses[s] = products[core].witness(s)
    diagnostics = {"nodes": nodes, "lts_states": len(lts.states),
                   "lts_transitions": len(lts.transitions),
                   "seconds": time.perf_counter() - started}
    return CheckResult(formula, core, table, diagnostics, witnesses)


def _cached(env, key, thunk):
    cache = getattr(env, "cached", None)
    return thunk() if cache is None else cache(key, thunk)
