"""Fraction addition done numerator plus numerator over denominator plus denominator."""

from __future__ import annotations

from ..answers import render
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "fractions/add_numerators_add_denominators"

_NUM = {
    "elementary": IntRange(1, 1),
    "middle": IntRange(1, 12),
    "early_high_school": IntRange(1, 20),
}
_DEN = {
    "elementary": IntRange(2, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 20),
}


def _different_denominators(p):
    return p["q"] != p["s"]


def _pizza_ok(p):
    pp, q, r, s = p["p"], p["q"], p["r"], p["s"]
    if q == s or pp >= q or r >= s:
        return False
    return Rational(pp, q) + Rational(r, s) <= Rational(1)


def _correct_sum(p):
    pp, q, r, s = p["p"], p["q"], p["r"], p["s"]
    common = q * s
    n1, n2 = pp * s, r * q
    total = Rational(n1 + n2, common)
    steps = [
        Step(f"Rewrite with the common denominator {common}: {pp}/{q} = {n1}/{common} and {r}/{s} = {n2}/{common}"),
        Step(f"{n1}/{common} + {n2}/{common} = {n1 + n2}/{common}"),
    ]
    if total.den != common:
        steps.append(Step(f"{n1 + n2}/{common} = {render(total)}"))
    return Trace(steps, total)


def _buggy_sum(p):
    pp, q, r, s = p["p"], p["q"], p["r"], p["s"]
    steps = [
        Step(f"Add the numerators: {pp} + {r} = {pp + r}"),
        Step(f"Add the denominators: {q} + {s} = {q + s}"),
        Step(f"{pp}/{q} + {r}/{s} = {pp + r}/{q + s}"),
    ]
    return Trace(steps, Rational(pp + r, q + s))


def _correct(params, template):
    return _correct_sum(params)


def _buggy(params, template):
    return _buggy_sum(params)


def build(meta):
    params = [
        ParamSpec("p", _NUM),
        ParamSpec("q", _DEN),
        ParamSpec("r", _NUM),
        ParamSpec("s", _DEN),
    ]
    templates = [
        Template(
            malrule=MALRULE,
            name="default",
            scaffold="basic",
            context_domain="abstract",
            params=params,
            statement="What is {p}/{q} + {r}/{s}?",
            example_params={"p": 5, "q": 3, "r": 7, "s": 4},
            constraint=_different_denominators,
            # The gap (p s^2 + r q^2) / (q s (q + s)) is at least 2/(q + s),
            # far above the grading tolerance.
            never_coincident=True,
        ),
        Template(
            malrule=MALRULE,
            name="word_problem_context",
            scaffold="word_problem",
            context_domain="food",
            params=params,
            statement=(
                "Sarah ate {p}/{q} of a pizza and John ate {r}/{s} of the same "
                "pizza. What fraction of the pizza did they eat together?"
            ),
            example_params={"p": 1, "q": 4, "r": 1, "s": 3},
            constraint=_pizza_ok,
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
