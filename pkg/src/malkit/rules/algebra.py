"""Moving a term across the equals sign without flipping its sign."""

from __future__ import annotations

from ..answers import render
from ..errors import MalruleNotTriggered
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "algebra/change_side_change_sign"

_C = {
    "elementary": IntRange(2, 5),
    "middle": IntRange(2, 9),
    "early_high_school": IntRange(2, 12),
}
_PQ = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(2, 19),
    "early_high_school": IntRange(2, 30),
}
_R = {
    "elementary": IntRange(5, 40),
    "middle": IntRange(10, 99),
    "early_high_school": IntRange(10, 200),
}
_RATE = {
    "elementary": IntRange(2, 5),
    "middle": IntRange(2, 9),
    "early_high_school": IntRange(2, 15),
}
_BASE = {
    "elementary": IntRange(5, 20),
    "middle": IntRange(10, 60),
    "early_high_school": IntRange(10, 99),
}
_BILL = {
    "elementary": IntRange(21, 99),
    "middle": IntRange(61, 200),
    "early_high_school": IntRange(100, 400),
}


def _solvable(p):
    c, pp, q, r = p["c"], p["p"], p["q"], p["r"]
    rhs = r - pp + q
    return pp != q and rhs > 0 and rhs % c == 0


def _correct_default(p):
    c, pp, q, r = p["c"], p["p"], p["q"], p["r"]
    rhs = r - pp + q
    x = Rational(rhs, c)
    steps = [
        Step(f"Move the constants: {c}x = {r} - {pp} + {q}"),
        Step(f"{c}x = {rhs}"),
        Step(f"x = {render(x)}"),
    ]
    return Trace(steps, x)


def _buggy_default(p):
    c, pp, q, r = p["c"], p["p"], p["q"], p["r"]
    if pp == q:
        raise MalruleNotTriggered("the unchanged signs cancel out")
    rhs = r + pp - q
    x = Rational(rhs, c)
    steps = [
        Step(f"Move the constants without changing signs: {c}x = {r} + {pp} - {q}"),
        Step(f"{c}x = {rhs}"),
        Step(f"x = {render(x)}"),
    ]
    return Trace(steps, x)


def _plan_ok(p):
    base, rate, bill = p["base"], p["rate"], p["bill"]
    return bill > base and (bill - base) % rate == 0


def _correct_plan(p):
    base, rate, bill = p["base"], p["rate"], p["bill"]
    diff = bill - base
    x = Rational(diff, rate)
    steps = [
        Step(f"The equation is {rate}x + {base} = {bill}"),
        Step(f"Move {base}: {rate}x = {bill} - {base} = {diff}"),
        Step(f"x = {render(x)}"),
    ]
    return Trace(steps, x)


def _buggy_plan(p):
    base, rate, bill = p["base"], p["rate"], p["bill"]
    rhs = bill + base
    x = Rational(rhs, rate)
    steps = [
        Step(f"The equation is {rate}x + {base} = {bill}"),
        Step(f"Move {base} without changing its sign: {rate}x = {bill} + {base} = {rhs}"),
        Step(f"x = {render(x)}"),
    ]
    return Trace(steps, x)


_CORRECT = {"default": _correct_default, "word_problem_context": _correct_plan}
_BUGGY = {"default": _buggy_default, "word_problem_context": _buggy_plan}


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
            params=[
                ParamSpec("c", _C),
                ParamSpec("p", _PQ),
                ParamSpec("q", _PQ),
                ParamSpec("r", _R),
            ],
            statement="Solve for x: {c}x + {p} - {q} = {r}",
            example_params={"c": 4, "p": 9, "q": 7, "r": 34},
            constraint=_solvable,
            never_coincident=True,  # answers differ by 2(p - q)/c with p != q
        ),
        Template(
            malrule=MALRULE,
            name="word_problem_context",
            scaffold="word_problem",
            context_domain="money",
            params=[
                ParamSpec("base", _BASE),
                ParamSpec("rate", _RATE),
                ParamSpec("bill", _BILL),
            ],
            statement=(
                "A phone plan costs ${base} monthly plus ${rate} per GB of data. "
                "If the bill is ${bill}, how many GB (x) were used?"
            ),
            example_params={"base": 29, "rate": 5, "bill": 114},
            constraint=_plan_ok,
            never_coincident=True,  # answers differ by 2 * base / rate
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
