"""The machine-readable report.

Top-level keys are always ``formula``, ``states`` and ``diagnostics``; every
state entry has ``name`` and ``verdict`` and, for until formulas checked
with witnesses, ``witness`` as an alternating state/action list.
"""
from __future__ import annotations

import json

from ..logic import And, to_text


def conjuncts(formula) -> list:
    """Top-level conjuncts of the formula as written."""
    if isinstance(formula, And):
        return conjuncts(formula.left) + conjuncts(formula.right)
    return [formula]


def build_report(result, states, table=False, oracle=None) -> dict:
    entries = []
    for s in states:
        entry = {"name": s, "verdict": result.holds(s)}
        if s in result.witnesses:
            entry["witness"] = result.witnesses[s].as_sequence()
        entries.append(entry)
    diagnostics = dict(result.diagnostics)
    diagnostics["core"] = to_text(result.core)
    parts = conjuncts(result.formula)
    if len(parts) > 1:
        diagnostics["conjuncts"] = [
            {"formula": to_text(c), "states": {s: s in result.sat(c) for s in states}}
            for c in parts]
    if table:
        diagnostics["table"] = {to_text(node): sorted(sat) for node, sat in result.table.items()}
    if oracle is not None:
        diagnostics["oracle"] = oracle
    return {"formula": to_text(result.formula), "states": entries, "diagnostics": diagnostics}


def render_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report) -> str:
    lines = [f"formula: {report['formula']}"]
    for entry in report["states"]:
        lines.append(f"{entry['name']}: {'true' if entry['verdict'] else 'false'}")
        if "witness" in entry:
            lines.append("  witness: " + " ".join(entry["witness"]))
    diag = report["diagnostics"]
    for part in diag.get("conjuncts", ()):
        verdicts = ", ".join(f"{s}={'true' if v else 'false'}" for s, v in part["states"].items())
        lines.append(f"conjunct {part['formula']}: {verdicts}")
    for node in diag.get("nodes", ()):
        extra = ""
        if "size_before" in node:
            extra = f", {node['transform']} {node['size_before']} -> {node['size_after']}"
        lines.append(f"  {node['engine']} {node['node']}: {node['controls']} controls, "
                     f"{node['rules']} rules, {node['saturated_edges']} edges{extra}")
    if "table" in diag:
        lines.append("subformulas:")
        for text, sat in diag["table"].items():
            lines.append(f"  {text}: {{{', '.join(sat)}}}")
    if "oracle" in diag:
        o = diag["oracle"]
        lines.append(f"oracle depth {o['depth']}: {len(o['disagreements'])} disagreement(s), "
                     f"{len(o['unknown'])} unknown")
    return "\n".join(lines)
