"""Absolute value pushed inside a sum or difference term by term."""

from __future__ import annotations

from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Quantity, Rational

MALRULE = "absolute_value/absolute_value_distributes"

_V = {
    "elementary": IntRange(-9, 9),
    "middle": IntRange(-20, 20),
    "early_high_school": IntRange(-40, 40),
}
_C = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(1, 20),
    "early_high_school": IntRange(1, 40),
}
_V_NEG = {
    "elementary": IntRange(-9, -1),
    "middle": IntRange(-20, -1),
    "early_high_school": IntRange(-40, -1),
}


def _correct_sub(p):
    v, c = p["v"], p["c"]
    inner = v - c
    steps = [
        Step(f"Substitute x = {v}: |{v} - {c}| = |{inner}|"),
        Step(f"|{inner}| = {abs(inner)}"),
    ]
    return Trace(steps, Rational(abs(inner)))


def _buggy_sub(p):
    v, c = p["v"], p["c"]
    val = abs(v) - c
    steps = [
        Step(f"|x - {c}| = |x| - {c}"),
        Step(f"|{v}| - {c} = {abs(v)} - {c} = {val}"),
    ]
    return Trace(steps, Rational(val))


def _pair_sub(p):
    v, c = p["v"], p["c"]
    return Rational(abs(v - c)), Rational(abs(v) - c)


def _correct_drone(p):
    v, c = p["v"], p["c"]
    inner = v + c
    dist = abs(inner)
    steps = [
        Step(f"Substitute x = {v}: |{v} + {c}| = |{inner}|"),
        Step(f"|{inner}| = {dist}"),
        Step(f"The distance is {dist} meters"),
    ]
    return Trace(steps, Quantity(Rational(dist), "meters"))


def _buggy_drone(p):
    v, c = p["v"], p["c"]
    val = abs(v) + c
    steps = [
        Step(f"|x + {c}| = |x| + {c}"),
        Step(f"|{v}| + {c} = {abs(v)} + {c} = {val}"),
        Step(f"The distance is {val} meters"),
    ]
    return Trace(steps, Quantity(Rational(val), "meters"))


def _pair_drone(p):
    v, c = p["v"], p["c"]
    return Quantity(Rational(abs(v + c)), "meters"), Quantity(Rational(abs(v) + c), "meters")


_CORRECT = {"basic_subtraction": _correct_sub, "word_problem": _correct_drone}
_BUGGY = {"basic_subtraction": _buggy_sub, "word_problem": _buggy_drone}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="basic_subtraction",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec("v", _V), ParamSpec("c", _C)],
            statement="Evaluate |x - {c}| when x = {v}",
            example_params={"v": 10, "c": 2},
            # For v >= c the distributed form happens to be right; generation
            # rejects those draws as coincident (roughly a quarter of them).
            answer_pair_fn=_pair_sub,
        ),
        Template(
            malrule=MALRULE,
            name="word_problem",
            scaffold="word_problem",
            context_domain="measurement",
            params=[ParamSpec("v", _V_NEG), ParamSpec("c", _C)],
            statement=(
                "A drone is at position x meters, and moves {c} meters to the "
                "right. The distance from the origin is |x + {c}|. If x = {v}, "
                "what is the distance from the origin?"
            ),
            example_params={"v": -3, "c": 3},
            answer_pair_fn=_pair_drone,
            never_coincident=True,  # with v < 0 the answers differ by 2 min(-v, c)
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
