"""f(a+b) computed as f(a) + f(b) on nonlinear f."""

from __future__ import annotations

from ..generation import IntRange, ParamSpec, Template, TokenRange
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "functions/function_distributive_property"

_F = {
    "elementary": TokenRange("x^2"),
    "middle": TokenRange("x^2", "x^3"),
    "early_high_school": TokenRange("x^2", "x^3", "x^4"),
}
_AB = {
    "elementary": IntRange(2, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 15),
}
_K = {
    "elementary": IntRange(1, 5),
    "middle": IntRange(1, 9),
    "early_high_school": IntRange(1, 12),
}
_AB_ABS = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 15),
}


def _power(f):
    return int(f.split("^", 1)[1])


def _correct_default(p):
    n = _power(p["f"])
    a, b = p["a"], p["b"]
    s = a + b
    steps = [
        Step(f"{a} + {b} = {s}"),
        Step(f"f({s}) = {s}^{n} = {s ** n}"),
    ]
    return Trace(steps, Rational(s ** n))


def _buggy_default(p):
    n = _power(p["f"])
    a, b = p["a"], p["b"]
    fa, fb = a ** n, b ** n
    steps = [
        Step(f"f({a} + {b}) = f({a}) + f({b})"),
        Step(f"f({a}) = {a}^{n} = {fa} and f({b}) = {b}^{n} = {fb}"),
        Step(f"{fa} + {fb} = {fa + fb}"),
    ]
    return Trace(steps, Rational(fa + fb))


def _correct_absfn(p):
    k, a, b = p["k"], p["a"], p["b"]
    s = a + b
    val = abs(s + k)
    steps = [
        Step(f"{a} + {b} = {s}"),
        Step(f"f({s}) = |{s} + {k}| = {val}"),
    ]
    return Trace(steps, Rational(val))


def _buggy_absfn(p):
    k, a, b = p["k"], p["a"], p["b"]
    fa, fb = abs(a + k), abs(b + k)
    steps = [
        Step(f"f({a} + {b}) = f({a}) + f({b})"),
        Step(f"f({a}) = |{a} + {k}| = {fa} and f({b}) = |{b} + {k}| = {fb}"),
        Step(f"{fa} + {fb} = {fa + fb}"),
    ]
    return Trace(steps, Rational(fa + fb))


_CORRECT = {"default": _correct_default, "absolute_value_function": _correct_absfn}
_BUGGY = {"default": _buggy_default, "absolute_value_function": _buggy_absfn}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="default",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec("f", _F), ParamSpec("a", _AB), ParamSpec("b", _AB)],
            statement="Given f(x) = {f}, evaluate f({a}+{b})",
            example_params={"f": "x^3", "a": 11, "b": 10},
            never_coincident=True,  # (a+b)^n exceeds a^n + b^n by the cross terms
        ),
        Template(
            malrule=MALRULE,
            name="absolute_value_function",
            scaffold="variant",
            context_domain="abstract",
            params=[ParamSpec("k", _K), ParamSpec("a", _AB_ABS), ParamSpec("b", _AB_ABS)],
            statement="Given f(x) = |x+{k}|, evaluate f({a}+{b})",
            example_params={"k": 3, "a": 8, "b": 4},
            never_coincident=True,  # all operands positive, so the paths differ by k
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
