"""Accuracy rollups over graded responses.

The headline table has one row per evaluation cell: CRA, the four MRA cells
(template condition x prompt condition), and FMRA, each with a delta against
CRA. Unparseable responses stay in the denominator and are reported. MRA
breakdowns by NCTM category and by malrule follow. Groups with no records
are omitted rather than shown as zero.
"""

from __future__ import annotations

from .grading import EvalRecord
from .sampling import SAME_TEMPLATE

CELL_ORDER = (
    "cra",
    "mra_same_answer_only",
    "mra_same_with_steps",
    "mra_cross_answer_only",
    "mra_cross_with_steps",
    "fmra",
)


def cell_key(record):
    if record["task"] != "mra":
        return record["task"]
    side = "same" if record["conditions"]["template_condition"] == SAME_TEMPLATE else "cross"
    return f"mra_{side}_{record['conditions']['prompt_condition']}"


class _Tally:
    __slots__ = ("total", "matched")

    def __init__(self):
        self.total = 0
        self.matched = 0

    def add(self, record):
        self.total += 1
        self.matched += 1 if record["matched"] else 0

    def as_dict(self):
        return {
            "total": self.total,
            "matched": self.matched,
            "accuracy": self.matched / self.total,
        }


class MetricsReport:
    def __init__(self, models):
        self.models = models

    def to_json(self):
        return {"models": self.models}

    def render_text(self):
        lines = []
        for model, block in self.models.items():
            if lines:
                lines.append("")
            lines.append(f"model: {model}")
            lines.extend(_render_cells(block))
            lines.extend(_render_breakdown("nctm category (mra)", block["nctm"]))
            lines.extend(_render_breakdown("malrule (mra)", block["malrules"]))
            lines.append("")
            lines.append("  " + _render_unparseable(block["unparseable"]))
        return "\n".join(lines) + "\n"


def _pct(x):
    return f"{100.0 * x:.2f}"


def _render_cells(block):
    cells = block["cells"]
    deltas = block["deltas"]
    width = max(len("cell"), *(len(k) for k in cells))
    lines = [f"  {'cell':<{width}}  {'total':>7}  {'matched':>7}  {'accuracy':>8}  {'delta':>7}"]
    for key in CELL_ORDER:
        if key not in cells:
            continue
        c = cells[key]
        delta = f"{100.0 * deltas[key]:+.2f}" if key in deltas else "-"
        lines.append(
            f"  {key:<{width}}  {c['total']:>7}  {c['matched']:>7}"
            f"  {_pct(c['accuracy']):>8}  {delta:>7}"
        )
    return lines


def _render_breakdown(title, table):
    if not table:
        return []
    width = max(len(title), *(len(k) for k in table))
    lines = ["", f"  {title:<{width}}  {'total':>7}  {'matched':>7}  {'accuracy':>8}"]
    for key, c in table.items():
        lines.append(
            f"  {key:<{width}}  {c['total']:>7}  {c['matched']:>7}  {_pct(c['accuracy']):>8}"
        )
    return lines


def _render_unparseable(info):
    by_task = ", ".join(f"{task} {n}" for task, n in info["by_task"].items())
    detail = f" ({by_task})" if by_task else ""
    return f"unparseable: {info['total']} of {info['responses']} responses{detail}"


def compute_metrics(records):
    """Aggregate graded records into a per-model MetricsReport."""
    by_model = {}
    for rec in records:
        if isinstance(rec, EvalRecord):
            rec = rec.to_record()
        model = rec["model"]
        block = by_model.setdefault(
            model,
            {"cells": {}, "nctm": {}, "malrules": {}, "unparseable_total": 0,
             "unparseable_by_task": {}, "responses": 0},
        )
        block["cells"].setdefault(cell_key(rec), _Tally()).add(rec)
        if rec["task"] == "mra":
            block["nctm"].setdefault(rec["meta"]["nctm_category"], _Tally()).add(rec)
            block["malrules"].setdefault(rec["meta"]["malrule"], _Tally()).add(rec)
        block["responses"] += 1
        if rec["unparseable"]:
            block["unparseable_total"] += 1
            by_task = block["unparseable_by_task"]
            by_task[rec["task"]] = by_task.get(rec["task"], 0) + 1

    models = {}
    for model in sorted(by_model):
        block = by_model[model]
        cells = {
            key: block["cells"][key].as_dict()
            for key in CELL_ORDER
            if key in block["cells"]
        }
        deltas = {}
        if "cra" in cells:
            base = cells["cra"]["accuracy"]
            deltas = {
                key: cells[key]["accuracy"] - base for key in cells if key != "cra"
            }
        models[model] = {
            "cells": cells,
            "deltas": deltas,
            "nctm": {k: t.as_dict() for k, t in sorted(block["nctm"].items())},
            "malrules": {k: t.as_dict() for k, t in sorted(block["malrules"].items())},
            "unparseable": {
                "total": block["unparseable_total"],
                "responses": block["responses"],
                "by_task": {
                    t: block["unparseable_by_task"][t]
                    for t in ("cra", "mra", "fmra")
                    if t in block["unparseable_by_task"]
                },
            },
        }
    return MetricsReport(models)
