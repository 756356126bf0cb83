"""Mode of a data set reported even when no value repeats."""

from __future__ import annotations

import math

from ..errors import MalruleNotTriggered
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Choice, Rational

MALRULE = "statistics/mode_must_exist"

_D = {
    "elementary": IntRange(1, 30),
    "middle": IntRange(1, 99),
    "early_high_school": IntRange(1, 200),
}

_SINGLE = ("d1", "d2", "d3", "d4", "d5")


def _tally(values):
    return ", ".join(f"{v}: {values.count(v)}" for v in sorted(set(values)))


def _all_distinct(p):
    data = [p[k] for k in _SINGLE]
    return len(set(data)) == len(data)


def _correct_single(p):
    data = [p[k] for k in _SINGLE]
    steps = [
        Step(f"Tally the values: {_tally(data)}"),
        Step("No value repeats, so there is no mode"),
        Step("none"),
    ]
    return Trace(steps, Choice("none"))


def _buggy_single(p):
    data = [p[k] for k in _SINGLE]
    if len(set(data)) != len(data):
        raise MalruleNotTriggered("a repeated value gives a real mode")
    top = max(data)
    steps = [
        Step(f"Tally the values: {_tally(data)}"),
        Step("Every value appears once, so take the largest value as the mode"),
        Step(f"mode = {top}"),
    ]
    return Trace(steps, Rational(top))


def _pair_distinct(p):
    small = [p["s1"], p["s2"], p["m"]]
    big = [p[f"b{i}"] for i in range(1, 7)]
    return len(set(small)) == 3 and len(set(big)) == 6


def _correct_pair(p):
    m = p["m"]
    steps = [
        Step(f"Dataset A: {m} appears twice, so the mode of A is {m}"),
        Step("Dataset B: every value appears once, so B has no mode"),
        Step("Only dataset A has a mode: A"),
    ]
    return Trace(steps, Choice("A"))


def _buggy_pair(p):
    m = p["m"]
    big = [p[f"b{i}"] for i in range(1, 7)]
    if len(set(big)) != 6:
        raise MalruleNotTriggered("dataset B has a genuine mode")
    steps = [
        Step(f"Dataset A: {m} appears twice, so the mode of A is {m}"),
        Step(f"Dataset B: every value appears once, so take the largest: mode = {max(big)}"),
        Step("Both datasets have a mode: both"),
    ]
    return Trace(steps, Choice("both"))


def _capacity_single(band):
    return math.perm(_D[band].size(), 5)


def _capacity_pair(band):
    n = _D[band].size()
    return math.perm(n, 3) * math.perm(n, 6)


_CORRECT = {"basic_no_mode": _correct_single, "comparison_problem": _correct_pair}
_BUGGY = {"basic_no_mode": _buggy_single, "comparison_problem": _buggy_pair}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="basic_no_mode",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec(k, _D) for k in _SINGLE],
            statement=(
                "Identify the mode for the following data set: "
                "[{d1}, {d2}, {d3}, {d4}, {d5}]. "
                'If no value repeats, answer "none".'
            ),
            example_params={"d1": 15, "d2": 95, "d3": 36, "d4": 4, "d5": 82},
            constraint=_all_distinct,
            capacity_fn=_capacity_single,
            never_coincident=True,  # "none" never grades equal to a number
        ),
        Template(
            malrule=MALRULE,
            name="comparison_problem",
            scaffold="variant",
            context_domain="abstract",
            params=[ParamSpec(k, _D) for k in ("s1", "s2", "m", "b1", "b2", "b3", "b4", "b5", "b6")],
            statement=(
                "Dataset A: [{s1}, {s2}, {m}, {m}], "
                "Dataset B: [{b1}, {b2}, {b3}, {b4}, {b5}, {b6}]. "
                'Which dataset has a mode? Answer "A", "B", or "both".'
            ),
            example_params={
                "s1": 2, "s2": 8, "m": 41,
                "b1": 68, "b2": 65, "b3": 52, "b4": 66, "b5": 91, "b6": 58,
            },
            constraint=_pair_distinct,
            capacity_fn=_capacity_pair,
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
