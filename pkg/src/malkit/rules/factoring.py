"""Factoring a sum of squares as if it were a perfect-square trinomial."""

from __future__ import annotations

from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..symbolic import Add, Lit, Mul, Pow, Var
from ..trace import Step, Trace
from ..values import Choice

MALRULE = "factoring/sum_of_squares_factors"

_K = {
    "elementary": IntRange(2, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 20),
}


def _correct_basic(p):
    k2 = p["k2"]
    steps = [
        Step(f"x^2 + {k2} is a sum of squares"),
        Step("A sum of two squares does not factor over the integers"),
        Step("prime"),
    ]
    return Trace(steps, Choice("prime"))


def _buggy_basic(p):
    k, k2 = p["k"], p["k2"]
    answer = Pow(Add(Var("x"), Lit(k)), 2)
    steps = [
        Step(f"x^2 + {k2} looks like a perfect square"),
        Step(f"x^2 + {k2} = (x + {k})^2"),
    ]
    return Trace(steps, answer)


def _correct_two_vars(p):
    a, b = p["a"], p["b"]
    steps = [
        Step(f"{a}^2x^2 + {b}^2y^2 = {a * a}x^2 + {b * b}y^2 is a sum of squares"),
        Step("A sum of two squares does not factor over the integers"),
        Step("prime"),
    ]
    return Trace(steps, Choice("prime"))


def _buggy_two_vars(p):
    a, b = p["a"], p["b"]
    answer = Pow(Add(Mul(Lit(a), Var("x")), Mul(Lit(b), Var("y"))), 2)
    steps = [
        Step(f"{a}^2x^2 + {b}^2y^2 looks like a perfect square"),
        Step(f"{a}^2x^2 + {b}^2y^2 = ({a}x + {b}y)^2"),
    ]
    return Trace(steps, answer)


_CORRECT = {"basic_sum_of_squares": _correct_basic, "both_variables": _correct_two_vars}
_BUGGY = {"basic_sum_of_squares": _buggy_basic, "both_variables": _buggy_two_vars}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="basic_sum_of_squares",
            scaffold="basic",
            context_domain="abstract",
            params=[
                ParamSpec("k", _K),
                ParamSpec("k2", derive=lambda p: p["k"] ** 2),
            ],
            statement=(
                "Factor: x^2 + {k2}. "
                'If the expression cannot be factored, answer "prime".'
            ),
            example_params={"k": 6},
            never_coincident=True,  # "prime" never grades equal to an expression
        ),
        Template(
            malrule=MALRULE,
            name="both_variables",
            scaffold="variant",
            context_domain="abstract",
            params=[ParamSpec("a", _K), ParamSpec("b", _K)],
            statement=(
                "Factor: {a}^2x^2 + {b}^2y^2. "
                'If the expression cannot be factored, answer "prime".'
            ),
            example_params={"a": 3, "b": 5},
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
