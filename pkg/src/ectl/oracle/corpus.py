"""Writes generated families to disk with stable file names."""
from __future__ import annotations

from pathlib import Path

from ..frontend.formats import serialize_aut, serialize_lts
from ..logic import to_text
from .generators import gen_fairness_family, gen_micro_tiling


def emit_fairness(n: int, k: int, directory) -> list:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for lts in gen_fairness_family(n, k):
        path = out / f"{lts.name}.lts"
        path.write_text(serialize_lts(lts))
        paths.append(path)
    return paths


def emit_tiling(n: int, tiles, H, V, directory, stem=None) -> list:
    """``<stem>.lts``, ``<stem>.aut`` and ``<stem>.ectl`` for one corridor
    instance; the formula file refers to the automaton by name."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    lts, formula, aut = gen_micro_tiling(n, tiles, H, V)
    stem = stem or f"tiling_{n}_{''.join(sorted(tiles))}"
    files = {".lts": serialize_lts(lts), ".aut": serialize_aut(aut), ".ectl": to_text(formula) + "\n"}
    paths = []
    for suffix, text in files.items():
        path = out / (stem + suffix)
        path.write_text(text)
        paths.append(path)
    return paths
