"""Instance families for differential tests."""
from __future__ import annotations

import itertools

from ..automata.finite import FiniteAutomaton
from ..errors import ValidationError
from ..logic import FF, EG, Lang
from ..lts import LabeledTransitionSystem

DUMMY_ACTION = "a"


def gen_fairness_family(n: int, k: int):
    """The pair ``(T, S)`` of ``(n+1)(k+2)``-state systems over one dummy
    action.  Layer ``l`` is the chain ``x_l_0 -> ... -> x_l_{k+1}`` with
    self-loops after the head, each layer descends into the one below, and
    ``q`` holds at the heads.  ``S`` also closes the top layer into a loop.
    """
    if n < 0 or k < 0:
        raise ValidationError("fairness family needs n, k >= 0")
    return _layers("t", n, k, closed=False), _layers("s", n, k, closed=True)


def _layers(prefix, n, k, closed):
    def x(l, m):
        return f"{prefix}_{l}_{m}"

    states = [x(l, m) for l in range(n + 1) for m in range(k + 2)]
    edges = set()
    for l in range(n + 1):
        for m in range(k + 2):
            if m > 0:
                edges.add((x(l, m), DUMMY_ACTION, x(l, m)))
            if m < k + 1:
                edges.add((x(l, m), DUMMY_ACTION, x(l, m + 1)))
        if l >= 1:
            edges.add((x(l, k + 1), DUMMY_ACTION, x(l - 1, 0)))
    if closed:
        edges.add((x(n, k + 1), DUMMY_ACTION, x(n, 0)))
    labeling = {x(l, 0): {"q"} for l in range(n + 1)}
    return LabeledTransitionSystem(states, {DUMMY_ACTION}, edges, labeling,
                                   designated=(x(n, 0),), name=f"fairness_{prefix.upper()}_{n}_{k}",
                                   props={"q"})


# --------------------------------------------------------------------------
# corridor tilings

MAX_TILING_N = 3
MAX_TILES = 3


def tiling_violations(n: int, tiles, H, V, name="tiling") -> FiniteAutomaton:
    """NFA for the words whose last letter breaks a corridor constraint.

    A path lists the tiling row by row, ``n`` tiles per row.  The word ends
    in a vertical violation when its last letter and the letter ``n``
    positions earlier form a pair outside ``V``; it ends in a horizontal
    violation when the last two letters share a row and their pair is not in
    ``H``.
    """
    tiles = sorted(tiles)
    H, V = set(map(tuple, H)), set(map(tuple, V))
    trans = {("start", None, "any"), ("start", None, "col_0")}
    for t in tiles:
        trans.add(("any", t, "any"))
        trans.add(("any", t, f"v_{t}_0"))
        for i in range(n - 1):
            for u in tiles:
                trans.add((f"v_{t}_{i}", u, f"v_{t}_{i + 1}"))
        for u in tiles:
            if (t, u) not in V:
                trans.add((f"v_{t}_{n - 1}", u, "bad"))
            if (t, u) not in H:
                trans.add((f"h_{t}", u, "bad"))
        for j in range(n):
            trans.add((f"col_{j}", t, f"col_{(j + 1) % n}"))
            if j <= n - 2:
                trans.add((f"col_{j}", t, f"h_{t}"))
    states = {q for (p, _, r) in trans for q in (p, r)} | {"bad"}
    return FiniteAutomaton("nfa", states, set(tiles), trans, "start", {"bad"}, name=name)


def gen_micro_tiling(n: int, tiles, H, V):
    """``(lts, formula, automaton)``: the one-state system looping on every
    tile and ``EG[tiling] ff`` over the violation automaton."""
    tiles = sorted(tiles)
    if not 1 <= n <= MAX_TILING_N or not 1 <= len(tiles) <= MAX_TILES:
        raise ValidationError(f"micro tiling needs 1 <= n <= {MAX_TILING_N} and "
                              f"1 <= |T| <= {MAX_TILES}")
    aut = tiling_violations(n, tiles, H, V)
    lts = LabeledTransitionSystem({"s"}, set(tiles), {("s", t, "s") for t in tiles}, {},
                                  designated=("s",), name=f"tiling_{n}")
    return lts, EG(Lang("name", aut.name), FF), aut


def tiling_exists(n: int, tiles, H, V) -> bool:
    """Brute force: a valid tiling of the infinite corridor exists iff the
    graph of H-valid rows under V-compatibility has a cycle."""
    H, V = set(map(tuple, H)), set(map(tuple, V))
    rows = [r for r in itertools.product(sorted(tiles), repeat=n)
            if all((r[j], r[j + 1]) in H for j in range(n - 1))]
    nxt = {r: [r2 for r2 in rows if all((a, b) in V for a, b in zip(r, r2))] for r in rows}
    # repeatedly drop rows without successors; whatever survives lies on or
    # leads into a cycle
    alive = set(rows)
    changed = True
    while changed:
        changed = False
        for r in list(alive):
            if not any(r2 in alive for r2 in nxt[r]):
                alive.discard(r)
                changed = True
    return bool(alive)
