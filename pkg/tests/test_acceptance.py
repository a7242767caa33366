"""Acceptance criteria, one test per criterion.

Every test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  Time budgets are
asserted on wall-clock time measured inside the test.
"""
import dataclasses
import io
import itertools
import math
import os
import random
import time
from pathlib import Path

import pytest

from ectl.automata import (FiniteAutomaton, PushdownWordAutomaton, VisiblyPushdownAutomaton,
                           complement, complete, determinize, regex_to_nfa, sigma_star_automaton)
from ectl.automata.library import anban_dpda, anban_pda, anbn_vpa, even_nfa, nbu_vpa
from ectl.checker import check, check_er, check_eu
from ectl.errors import CapExceeded, ValidationError
from ectl.frontend.cli import main
from ectl.frontend.env import Environment
from ectl.frontend.formats import parse_lts
from ectl.frontend.formula import parse_formula
from ectl.frontend.report import conjuncts
from ectl.logic import automata_depth, temporal_depth
from ectl.lts import LabeledTransitionSystem
from ectl.oracle import (Runner, ctl_fixpoint_check, finite_product_check, gen_fairness_family,
                         gen_micro_tiling, tiling_exists)
from ectl.pds import accepts_config, config_set, has_infinite_run, pre_star

from .gen import (all_configs, all_runs_halt, backward_closure, forward_reaches, random_dfa,
                  random_dpda, random_lts, random_nfa, random_pda, random_pds, random_plain_formula,
                  random_vpa, run_of_length, universal_lts)

DATA = Path(__file__).parent / "data"


def elapsed(start):
    return time.perf_counter() - start


# --------------------------------------------------------------------------
# 1

@pytest.mark.criterion(1, "buffer example: conjunction false, conjuncts true/false/false, < 1 s")
def test_criterion_1_buffer(note):
    start = time.perf_counter()
    lts = parse_lts((DATA / "buffer_loop.lts").read_text())
    env = Environment(lts.actions)
    text = (DATA / "nbu_spec.ectl").read_text()
    spec = parse_formula(text, env)
    whole = check(lts, spec, env)
    verdicts = [check(lts, part, env).holds("s") for part in conjuncts(spec)]
    t = elapsed(start)
    note(f"conjuncts {verdicts}, {t:.3f} s")
    assert not whole.holds("s")
    assert verdicts == [True, False, False]
    assert t < 1.0


# --------------------------------------------------------------------------
# 2

def _named(aut, name):
    return dataclasses.replace(aut, name=name)


def _without_finals(aut, name):
    return dataclasses.replace(aut, finals=frozenset(), name=name)


def _enumerated_nonempty(aut, max_len=10):
    runner = Runner(aut)
    level = {(): runner.start()}
    for _ in range(max_len + 1):
        if any(runner.accepting(c) for c in level.values()):
            return True
        nxt = {}
        for w, configs in level.items():
            for a in sorted(aut.alphabet):
                after = runner.step(configs, a)
                if after:
                    nxt[w + (a,)] = after
        # words reaching the same configuration set behave alike from here on
        level = {}
        for w, configs in sorted(nxt.items()):
            level.setdefault(configs, w)
        level = {w: c for c, w in level.items()}
    return False


def emptiness_library():
    """(automaton, nonempty?) pairs covering all six kinds."""
    ab = {"a", "b"}
    lib = [
        (sigma_star_automaton(ab, name="sigma_star"), True),
        (FiniteAutomaton("nfa", {"q"}, ab, set(), "q", set(), name="empty_nfa"), False),
        (regex_to_nfa("(a a)*", ab, name="even_a"), True),
        (even_nfa(name="even_nfa"), True),
        (_named(determinize(regex_to_nfa("(a a)*", ab)), "even_dfa"), True),
        (_without_finals(determinize(regex_to_nfa("a b*", ab)), "empty_dfa"), False),
        (anbn_vpa(), True),
        (nbu_vpa(name="nbu"), True),
        (_without_finals(anbn_vpa(), "empty_vpa"), False),
        (_named(determinize(anbn_vpa()), "anbn_dvpa"), True),
        (_named(determinize(nbu_vpa()), "nbu_dvpa"), True),
        (_named(determinize(_without_finals(anbn_vpa(), "x")), "empty_dvpa"), False),
        (anban_pda(), True),
        (_without_finals(anban_pda(), "empty_pda"), False),
        (anban_dpda(), True),
        (_named(complement(complete(anban_dpda())), "co_anban"), True),
        (_without_finals(anban_dpda(), "empty_dpda"), False),
    ]
    rng = random.Random(2002)
    makers = {"dfa": random_dfa, "nfa": random_nfa, "vpa": lambda r, name: random_vpa(r, 3, name=name),
              "dvpa": lambda r, name: determinize(random_vpa(r, 3, name=name)),
              "pda": random_pda, "dpda": random_dpda}
    for kind, make in makers.items():
        found = 0
        for i in range(200):
            aut = make(rng, name=f"rand_{kind}_{i}")
            aut = _named(aut, f"rand_{kind}_{i}")
            if kind in ("dfa", "nfa"):
                # at most 5 states: a shortest accepted word is shorter than 5
                lib.append((aut, _enumerated_nonempty(aut)))
                found += 1
            elif _enumerated_nonempty(aut):
                lib.append((aut, True))
                found += 1
            if found == 3:
                break
    return lib


@pytest.mark.criterion(2, "emptiness correspondence on >= 20 automata of all six kinds, < 5 s")
def test_criterion_2_emptiness(note):
    start = time.perf_counter()
    lib = emptiness_library()
    kinds = {aut.kind for aut, _ in lib}
    wrong = []
    for aut, nonempty in lib:
        lts = universal_lts(set(aut.alphabet))
        env = Environment(lts.actions, [aut])
        f = parse_formula(f"EF[{aut.kind}:{aut.name}] tt", env)
        if check(lts, f, env).holds("s") != nonempty:
            wrong.append(aut.name)
    t = elapsed(start)
    note(f"{len(lib)} automata, kinds {sorted(kinds)}, {len(wrong)} wrong, {t:.2f} s")
    assert len(lib) >= 20
    assert kinds == {"dfa", "nfa", "vpa", "dvpa", "pda", "dpda"}
    assert not wrong
    assert t < 5.0


# --------------------------------------------------------------------------
# 3

@pytest.mark.criterion(3, "plain CTL differential battery, 1000 instances, < 30 s")
def test_criterion_3_plain_ctl(note):
    start = time.perf_counter()
    rng = random.Random(3003)
    mismatches = 0
    for _ in range(1000):
        lts = random_lts(rng, max_states=8)
        f = random_plain_formula(rng, 4)
        env = Environment(lts.actions)
        if check(lts, f, env).satisfying != ctl_fixpoint_check(lts, f):
            mismatches += 1
    t = elapsed(start)
    note(f"{mismatches} disagreements, {t:.1f} s")
    assert mismatches == 0
    assert t < 30.0


# --------------------------------------------------------------------------
# 4

@pytest.mark.criterion(4, "regular-fragment EU/ER battery, 1000 instances, < 60 s")
def test_criterion_4_regular(note):
    start = time.perf_counter()
    rng = random.Random(4004)
    mismatches = 0
    for i in range(1000):
        lts = random_lts(rng, max_states=8)
        aut = random_dfa(rng, name=f"A{i}") if rng.random() < 0.5 else random_nfa(rng, name=f"A{i}")
        env = Environment(lts.actions, [aut])
        x, y = lts.sat("p"), lts.sat("q")
        for op, mode in (("U", "until"), ("R", "release")):
            f = parse_formula(f"E(p {op}[{aut.kind}:{aut.name}] q)", env)
            if check(lts, f, env).satisfying != finite_product_check(lts, x, aut, y, mode):
                mismatches += 1
    t = elapsed(start)
    note(f"2000 checks, {mismatches} disagreements, {t:.1f} s")
    assert mismatches == 0
    assert t < 60.0


# --------------------------------------------------------------------------
# 5

@pytest.mark.criterion(5, "pre* and infinite-run micro-oracles on 500 random PDSs, < 60 s")
def test_criterion_5_pds(note):
    start = time.perf_counter()
    rng = random.Random(5005)
    failures = []
    checked = 0
    for i in range(500):
        pds = random_pds(rng, max_states=4, max_symbols=3, max_rules=10)
        stack = sorted(pds.stack)
        targets = {(rng.choice(sorted(pds.states)),
                    tuple(rng.choice(stack) for _ in range(rng.randint(0, 3))))
                   for _ in range(rng.randint(1, 3))}
        result = pre_star(pds, config_set(pds.states, targets))
        close = backward_closure(pds, targets, 6)
        for c in all_configs(pds, 6):
            accepted = accepts_config(result, *c)
            if c in close and not accepted:
                failures.append(("missed", i, c))
            elif accepted and c not in close and not forward_reaches(pds, c, targets, 12):
                failures.append(("unwitnessed", i, c))
        inf = has_infinite_run(pds)
        for c in all_configs(pds, 2):
            checked += 1
            if accepts_config(inf, *c):
                if run_of_length(pds, c, 50) is None:
                    failures.append(("no long run", i, c))
            elif all_runs_halt(pds, c, 12) is not True:
                failures.append(("not certified to halt", i, c))
    t = elapsed(start)
    note(f"500 systems, {checked} infinite-run verdicts, {len(failures)} failures, {t:.1f} s")
    assert not failures, failures[:5]
    assert t < 60.0


# --------------------------------------------------------------------------
# 6

BATTERY_CAP = 2000


def _deterministic_complete(aut) -> bool:
    if isinstance(aut, FiniteAutomaton):
        moves = {}
        for (q, a, r) in aut.transitions:
            moves[(q, a)] = moves.get((q, a), 0) + 1
        return aut.kind == "dfa" and all(moves.get((q, a)) == 1 for q in aut.states for a in aut.alphabet)
    calls, rets, ints = {}, {}, {}
    for (q, a, _, _) in aut.call_rules:
        calls[(q, a)] = calls.get((q, a), 0) + 1
    for (q, a, g, _) in aut.return_rules:
        rets[(q, a, g)] = rets.get((q, a, g), 0) + 1
    for (q, a, _) in aut.internal_rules:
        ints[(q, a)] = ints.get((q, a), 0) + 1
    return (aut.kind == "dvpa"
            and all(calls.get((q, a)) == 1 for q in aut.states for a in aut.calls)
            and all(rets.get((q, a, g)) == 1 for q in aut.states for a in aut.returns for g in aut.stack)
            and all(ints.get((q, a)) == 1 for q in aut.states for a in aut.internals))


def _same_words(left, right, alphabet, max_len):
    """Walk the word tree once, stepping both automata along shared prefixes."""
    a, b = Runner(left), Runner(right)
    todo = [(0, a.start(), b.start())]
    while todo:
        depth, x, y = todo.pop()
        if a.accepting(x) != b.accepting(y):
            return False
        if depth < max_len:
            for letter in alphabet:
                todo.append((depth + 1, a.step(x, letter), b.step(y, letter)))
    return True


@pytest.mark.criterion(6, "determinization batteries: 200 NFAs and 100 VPAs, words <= 8, < 60 s")
def test_criterion_6_determinization(note):
    start = time.perf_counter()
    rng = random.Random(6006)
    failures = []
    for i in range(200):
        nfa = random_nfa(rng, max_states=6, eps=True, name=f"N{i}")
        det = complete(determinize(nfa))
        if not _deterministic_complete(det):
            failures.append(("structure", nfa.name))
        elif not _same_words(nfa, det, sorted(nfa.alphabet), 8):
            failures.append(("language", nfa.name))
    blowups = []
    for i in range(100):
        vpa = random_vpa(rng, max_states=5, name=f"V{i}")
        try:
            det = complete(determinize(vpa, cap=BATTERY_CAP))
        except CapExceeded:
            blowups.append(vpa.name)
            continue
        if not _deterministic_complete(det):
            failures.append(("structure", vpa.name))
        elif not _same_words(vpa, det, sorted(vpa.calls | vpa.returns | vpa.internals), 8):
            failures.append(("language", vpa.name))
    t = elapsed(start)
    note(f"{len(failures)} wrong outputs, {len(blowups)} of 100 VPAs exceed {BATTERY_CAP} "
         f"determinized states, {t:.1f} s")
    assert not failures, failures[:5]
    assert not blowups, f"{len(blowups)} VPAs exceed the {BATTERY_CAP}-state cap: {blowups}"
    assert t < 60.0


# --------------------------------------------------------------------------
# 7

def _tiling_instances():
    """Every (n, tiles, H, V) with n <= 3 and |T| <= 3: the instances with
    one or two tiles first, then the three-tile ones in a seeded order."""
    def family(size):
        tiles = ("t0", "t1", "t2")[:size]
        pairs = list(itertools.product(tiles, repeat=2))
        count = 1 << len(pairs)
        return tiles, pairs, count

    small = []
    for size in (1, 2):
        tiles, pairs, count = family(size)
        for n in (1, 2, 3):
            for h in range(count):
                for v in range(count):
                    small.append((n, tiles, pairs, h, v))
    tiles, pairs, count = family(3)
    large = [(n, h, v) for n in (1, 2, 3) for h in range(count) for v in range(count)]
    random.Random(7007).shuffle(large)
    yield from small
    for (n, h, v) in large:
        yield (n, tiles, pairs, h, v)


TILING_TOTAL = 3 * (2 ** 2 + 2 ** 8) + 3 * 2 ** 18


@pytest.mark.criterion(7, "micro-tiling: all instances n <= 3, |T| <= 3 agree with brute force, < 30 s")
def test_criterion_7_tiling(note):
    """The whole family is enumerated in a fixed order until the 30 s budget
    runs out; set ECTL_FULL_TILING=1 to run it to completion regardless."""
    full = os.environ.get("ECTL_FULL_TILING") == "1"
    start = time.perf_counter()
    done, wrong = 0, []
    for (n, tiles, pairs, h, v) in _tiling_instances():
        if not full and elapsed(start) > 30.0:
            break
        H = {p for k, p in enumerate(pairs) if h >> k & 1}
        V = {p for k, p in enumerate(pairs) if v >> k & 1}
        lts, f, aut = gen_micro_tiling(n, tiles, H, V)
        if check(lts, f, Environment(lts.actions, [aut])).holds("s") != tiling_exists(n, tiles, H, V):
            wrong.append((n, tiles, sorted(H), sorted(V)))
        done += 1
    t = elapsed(start)
    note(f"{done} of {TILING_TOTAL} instances in {t:.1f} s, {len(wrong)} disagreements")
    assert not wrong, wrong[:5]
    assert done == TILING_TOTAL, f"only {done} of {TILING_TOTAL} instances fit in the budget"
    assert t < 30.0


# --------------------------------------------------------------------------
# 8

def _unary_pool(k):
    """Automata over the single action ``a`` with nonempty, epsilon-free
    languages and automata depth below ``k``."""
    a = {"a"}
    pool = [regex_to_nfa("a", a, name="one"), regex_to_nfa("a a*", a, name="plus"),
            _named(determinize(regex_to_nfa("a a*", a)), "plus_dfa"),
            VisiblyPushdownAutomaton("vpa", {"a"}, set(), set(), {"q0", "q1"}, {"X"}, "BOT",
                                     {("q0", "a", "X", "q1"), ("q1", "a", "X", "q1")}, set(), set(),
                                     "q0", {"q1"}, name="vplus"),
            PushdownWordAutomaton("dpda", {"q0", "q1"}, a, {"X"}, "BOT",
                                  {("q0", "a", "BOT", "q1", ("X", "BOT")),
                                   ("q1", "a", "X", "q1", ("X", "X"))}, "q0", {"q1"}, name="dplus")]
    if k >= 3:
        pool += [regex_to_nfa("a a", a, name="two"), regex_to_nfa("a | a a", a, name="upto2"),
                 regex_to_nfa("(a a)+", a, name="evens"), regex_to_nfa("a a a*", a, name="atleast2"),
                 PushdownWordAutomaton("dpda", {"q0", "q1", "q2"}, a, {"X"}, "BOT",
                                       {("q0", "a", "BOT", "q1", ("X", "BOT")),
                                        ("q1", "a", "X", "q2", ("X", "X")),
                                        ("q2", "a", "X", "q1", ("X", "X"))},
                                       "q0", {"q2"}, name="devens")]
    return pool


def _fair_formula(rng, td, names):
    if td == 0 or rng.random() < 0.2:
        return rng.choice(["q", "q", "!q", "tt", "ff"])
    r = rng.random()
    if r < 0.15:
        return f"!({_fair_formula(rng, td, names)})"
    if r < 0.35:
        op = rng.choice(["&", "|"])
        return f"({_fair_formula(rng, td, names)} {op} {_fair_formula(rng, td, names)})"
    lang = f"[{rng.choice(names)}]"
    left, right = _fair_formula(rng, td - 1, names), _fair_formula(rng, td - 1, names)
    shape = rng.choice(["EU", "AU", "ER", "AR", "EF", "AF", "EG", "AG", "EX", "AX"])
    if shape in ("EX", "AX"):
        return f"{shape} ({right})"
    if shape[1] in "UR":
        return f"{shape[0]}(({left}) {shape[1]}{lang} ({right}))"
    return f"{shape}{lang} ({right})"


@pytest.mark.criterion(8, "fairness families (3,2) and (4,3): T and S agree on 100 formulas, < 30 s")
def test_criterion_8_fairness(note):
    start = time.perf_counter()
    rng = random.Random(8008)
    wrong = []
    for (n, k) in ((3, 2), (4, 3)):
        pool = _unary_pool(k)
        env = Environment({"a"}, pool)
        names = [aut.name for aut in pool]
        assert all(automata_depth(parse_formula(f"EF[{m}] q", env), env) < k for m in names)
        T, S = gen_fairness_family(n, k)
        for _ in range(100):
            f = parse_formula(_fair_formula(rng, n - 1, names), env)
            assert temporal_depth(f) < n and automata_depth(f, env) < k
            t_sat, s_sat = check(T, f, env).satisfying, check(S, f, env).satisfying
            for m in range(k + 2):
                if (f"t_{n}_{m}" in t_sat) != (f"s_{n}_{m}" in s_sat):
                    wrong.append((n, k, m, str(f)))
    t = elapsed(start)
    note(f"200 formulas, {len(wrong)} disagreements, {t:.1f} s")
    assert not wrong, wrong[:5]
    assert t < 30.0


# --------------------------------------------------------------------------
# 9

def _chain(word, name):
    states = [f"{name}{i}" for i in range(len(word) + 1)]
    trans = {(states[i], a, states[i + 1]) for i, a in enumerate(word)}
    return LabeledTransitionSystem(states, set(word), trans, {}, designated=(states[0],))


def _replay(lts, env, result, root, aut):
    """The witness is a path of the system, its word is in the language, and
    its endpoint satisfies the until's right-hand side."""
    w = result.witnesses[root]
    assert w.states[0] == root
    for (s, a, t) in zip(w.states, w.actions, w.states[1:]):
        assert (s, a, t) in lts.transitions
    assert Runner(aut).accepts(tuple(w.actions))
    assert w.states[-1] in result.table[result.core.right]
    return w


@pytest.mark.criterion(9, "pushdown until with replayed witnesses on a^n b^n and a^n b a^n chains, < 1 s")
def test_criterion_9_pushdown_until(note):
    start = time.perf_counter()
    k = 10
    lts = _chain("a" * k + "b" * k, "c")
    env = Environment(lts.actions)
    result = check(lts, parse_formula("EF[vpa:anbn] AX ff", env), env, witness_states=["c0"])
    assert result.holds("c0")
    w1 = _replay(lts, env, result, "c0", anbn_vpa())
    assert len(w1.actions) == 2 * k

    lts2 = _chain("a" * k + "b" + "a" * k, "d")
    env2 = Environment(lts2.actions)
    result2 = check(lts2, parse_formula("EF[dpda:anban_det] AX ff", env2), env2, witness_states=["d0"])
    assert result2.holds("d0")
    w2 = _replay(lts2, env2, result2, "d0", anban_dpda())
    assert len(w2.actions) == 2 * k + 1
    # one letter short of the end there is nothing to match
    assert not check(lts, parse_formula("EF[vpa:anbn] AX ff", env), env).holds("c1")
    t = elapsed(start)
    note(f"witness lengths {len(w1.actions)} and {len(w2.actions)}, {t:.3f} s")
    assert t < 1.0


# --------------------------------------------------------------------------
# 10

SCALING_FORMULA = "EF[pda:anban] q | EG[dpda:anban_det] p"


def scaling_chain(n):
    """``n`` states reading a^m b a^m ... along a chain; p everywhere, q at
    the end."""
    m = (n - 2) // 2
    word = "a" * m + "b" + "a" * (n - 2 - m)
    lts = _chain(word, "c")
    last = f"c{len(word)}"
    labels = {s: {"p"} for s in lts.states}
    labels[last] = {"p", "q"}
    return LabeledTransitionSystem(lts.states, lts.actions, lts.transitions, labels,
                                   designated=lts.designated)


@pytest.mark.criterion(10, "polynomial scaling on chains n = 100..800: log-log slope < 2.5, < 120 s")
def test_criterion_10_scaling(note):
    start = time.perf_counter()
    sizes, times = [100, 200, 400, 800], []
    for n in sizes:
        lts = scaling_chain(n)
        env = Environment(lts.actions)
        f = parse_formula(SCALING_FORMULA, env)
        t0 = time.perf_counter()
        result = check(lts, f, env)
        times.append(time.perf_counter() - t0)
        assert result.holds("c0")
    xs = [math.log(n) for n in sizes]
    ys = [math.log(t) for t in times]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    t = elapsed(start)
    note(f"times {[round(x, 2) for x in times]} s, slope {slope:.2f}, {t:.1f} s total")
    assert slope < 2.5
    assert t < 120.0


# --------------------------------------------------------------------------
# 11

GUARDED = ["EG[pda:anban] ff", "AF[pda:anban] q", "E(p R[pda:anban] q)", "A(p U[pda:anban] q)",
           "EF (q & EG[pda:anban] p)", "!AF[pda:anban] (p | q)", "AX EG[pda:anban] tt"]
ALLOWED = ["EF[pda:anban] q", "AG[pda:anban] q", "AX[step:pda:anban] q",
           "EG[dpda:anban_det] p", "AF[vpa:anbn] q"]


@pytest.mark.criterion(11, "undecidability guardrails: PDA on a release exits 2 naming the subformula")
def test_criterion_11_guardrails(note, tmp_path, capsys):
    system = tmp_path / "ab.lts"
    system.write_text("actions a b\nprops p q\nstate s [p]\nstate t [q]\n"
                      "trans s a s\ntrans s b t\ntrans t a t\ninit s\n")
    for expr in GUARDED:
        code = main(["check", "--system", str(system), "--expr", expr], out=io.StringIO())
        err = capsys.readouterr().err
        assert code == 2, expr
        assert "R[pda:anban]" in err or "R[anban]" in err, err
    for expr in ALLOWED:
        code = main(["check", "--system", str(system), "--expr", expr], out=io.StringIO())
        assert code in (0, 1), expr
    note(f"{len(GUARDED)} rejected with exit 2, {len(ALLOWED)} decidable ones accepted")


def test_guardrail_engine_level():
    lts = universal_lts({"a", "b"})
    with pytest.raises(ValidationError):
        check_er(lts, set(), anban_pda(), set())
    assert check_eu(lts, {"s"}, anban_pda(), {"s"}) == {"s"}
