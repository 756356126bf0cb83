"""Division always performed larger by smaller, whatever the problem says."""

from __future__ import annotations

from ..answers import decimal_or_rational, render
from ..errors import MalruleNotTriggered
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace

MALRULE = "multiplication_division/divide_larger_by_smaller_always"

_A = {
    "elementary": IntRange(1, 8),
    "middle": IntRange(2, 11),
    "early_high_school": IntRange(2, 19),
}
_B = {
    "elementary": IntRange(2, 9),
    "middle": IntRange(3, 12),
    "early_high_school": IntRange(3, 20),
}


def _smaller_dividend(p):
    return p["a"] < p["b"]


def _correct_share(p, noun):
    a, b = p["a"], p["b"]
    value = decimal_or_rational(a, b)
    steps = [
        Step(f"Each {noun} is {a} / {b}"),
        Step(f"{a} / {b} = {render(value)}"),
    ]
    return Trace(steps, value)


def _buggy_share(p):
    a, b = p["a"], p["b"]
    if a >= b:
        raise MalruleNotTriggered("the dividend is not smaller than the divisor")
    value = decimal_or_rational(b, a)
    steps = [
        Step(f"{a} / {b} -> {b} / {a} (divide the larger by the smaller)"),
        Step(f"{b} / {a} = {render(value)}"),
    ]
    return Trace(steps, value)


def _correct(params, template):
    noun = "share" if template.name == "word_problem_sharing" else "strip"
    return _correct_share(params, noun)


def _buggy(params, template):
    return _buggy_share(params)


def build(meta):
    common = dict(
        params=[ParamSpec("a", _A), ParamSpec("b", _B)],
        constraint=_smaller_dividend,
        never_coincident=True,  # a < b puts a/b below 1 and b/a above it
    )
    templates = [
        Template(
            malrule=MALRULE,
            name="word_problem_sharing",
            scaffold="word_problem",
            context_domain="sharing",
            statement=(
                "{a} cookies are shared equally among {b} children. "
                "How much does each child get?"
            ),
            example_params={"a": 4, "b": 6},
            **common,
        ),
        Template(
            malrule=MALRULE,
            name="word_problem_measurement",
            scaffold="word_problem",
            context_domain="measurement",
            statement=(
                "{a} meters of ribbon is divided into {b} equal strips. "
                "How long is each strip in meters?"
            ),
            example_params={"a": 4, "b": 5},
            **common,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
