"""Exponent distributed across the terms of a sum."""

from __future__ import annotations

from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "exponents/distribute_exponent_over_addition"

_TERM = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(1, 12),
    "early_high_school": IntRange(1, 15),
}
_N = {
    "elementary": IntRange(2, 2),
    "middle": IntRange(2, 3),
    "early_high_school": IntRange(2, 4),
}


def _correct_two(p):
    a, b, n = p["a"], p["b"], p["n"]
    s = a + b
    steps = [
        Step(f"{a} + {b} = {s}"),
        Step(f"{s}^{n} = {s**n}"),
    ]
    return Trace(steps, Rational(s**n))


def _buggy_two(p):
    a, b, n = p["a"], p["b"], p["n"]
    fa, fb = a**n, b**n
    steps = [
        Step(f"({a} + {b})^{n} = {a}^{n} + {b}^{n}"),
        Step(f"{a}^{n} = {fa} and {b}^{n} = {fb}"),
        Step(f"{fa} + {fb} = {fa + fb}"),
    ]
    return Trace(steps, Rational(fa + fb))


def _correct_three(p):
    a, b, c, n = p["a"], p["b"], p["c"], p["n"]
    s = a + b + c
    steps = [
        Step(f"{a} + {b} + {c} = {s}"),
        Step(f"{s}^{n} = {s**n}"),
    ]
    return Trace(steps, Rational(s**n))


def _buggy_three(p):
    a, b, c, n = p["a"], p["b"], p["c"], p["n"]
    fa, fb, fc = a**n, b**n, c**n
    steps = [
        Step(f"({a} + {b} + {c})^{n} = {a}^{n} + {b}^{n} + {c}^{n}"),
        Step(f"{a}^{n} = {fa}, {b}^{n} = {fb}, {c}^{n} = {fc}"),
        Step(f"{fa} + {fb} + {fc} = {fa + fb + fc}"),
    ]
    return Trace(steps, Rational(fa + fb + fc))


_CORRECT = {"simple_two_term": _correct_two, "three_term": _correct_three}
_BUGGY = {"simple_two_term": _buggy_two, "three_term": _buggy_three}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="simple_two_term",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec("a", _TERM), ParamSpec("b", _TERM), ParamSpec("n", _N)],
            statement="Evaluate: ({a} + {b})^{n}",
            example_params={"a": 2, "b": 4, "n": 2},
            never_coincident=True,  # the dropped cross terms total at least 2ab
        ),
        Template(
            malrule=MALRULE,
            name="three_term",
            scaffold="variant",
            context_domain="abstract",
            params=[
                ParamSpec("a", _TERM),
                ParamSpec("b", _TERM),
                ParamSpec("c", _TERM),
                ParamSpec("n", _N),
            ],
            statement="Evaluate: ({a} + {b} + {c})^{n}",
            example_params={"a": 1, "b": 3, "c": 2, "n": 2},
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
