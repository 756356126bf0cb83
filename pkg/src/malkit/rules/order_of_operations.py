"""Addition performed before subtraction regardless of position."""

from __future__ import annotations

from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Quantity, Rational

MALRULE = "order_of_operations/addition_before_subtraction_always"

_A = {
    "elementary": IntRange(5, 20),
    "middle": IntRange(10, 99),
    "early_high_school": IntRange(10, 200),
}
_BC = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(1, 99),
    "early_high_school": IntRange(1, 150),
}
_T = {
    "elementary": IntRange(10, 50),
    "middle": IntRange(20, 90),
    "early_high_school": IntRange(20, 150),
}
_DR = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(1, 19),
    "early_high_school": IntRange(1, 40),
}


def _correct_simple(p):
    a, b, c = p["a"], p["b"], p["c"]
    first = a - b
    steps = [
        Step(f"Work left to right: {a} - {b} = {first}"),
        Step(f"{first} + {c} = {first + c}"),
    ]
    return Trace(steps, Rational(first + c))


def _buggy_simple(p):
    a, b, c = p["a"], p["b"], p["c"]
    s = b + c
    steps = [
        Step(f"Addition comes first: {b} + {c} = {s}"),
        Step(f"{a} - {s} = {a - s}"),
    ]
    return Trace(steps, Rational(a - s))


def _correct_temp(p):
    t, d, r = p["t"], p["d"], p["r"]
    low = t - d
    steps = [
        Step(f"{t} - {d} = {low}"),
        Step(f"{low} + {r} = {low + r}"),
    ]
    return Trace(steps, Quantity(Rational(low + r), "°F"))


def _buggy_temp(p):
    t, d, r = p["t"], p["d"], p["r"]
    s = d + r
    steps = [
        Step(f"Addition comes first: {d} + {r} = {s}"),
        Step(f"{t} - {s} = {t - s}"),
    ]
    return Trace(steps, Quantity(Rational(t - s), "°F"))


_CORRECT = {"simple_expression": _correct_simple, "temperature_change": _correct_temp}
_BUGGY = {"simple_expression": _buggy_simple, "temperature_change": _buggy_temp}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="simple_expression",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec("a", _A), ParamSpec("b", _BC), ParamSpec("c", _BC)],
            statement="Evaluate: {a} - {b} + {c}",
            example_params={"a": 29, "b": 28, "c": 12},
            never_coincident=True,  # answers differ by 2c >= 2
        ),
        Template(
            malrule=MALRULE,
            name="temperature_change",
            scaffold="context",
            context_domain="temperature",
            params=[ParamSpec("t", _T), ParamSpec("d", _DR), ParamSpec("r", _DR)],
            statement=(
                "Starting at {t}°F, the temperature decreases by {d}°F, "
                "then increases by {r}°F. What's the result?"
            ),
            example_params={"t": 45, "d": 5, "r": 3},
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
