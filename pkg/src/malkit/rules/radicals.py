"""sqrt(a^2 + b^2) rewritten as sqrt(a^2) + sqrt(b^2) = a + b."""

from __future__ import annotations

import math

from ..generation import IntRange, LiteralRange, ParamSpec, Template
from ..registry import MalruleDef
from ..symbolic import Lit, Sqrt
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "radicals/distribute_square_root_over_addition"

_X = {
    "elementary": IntRange(2, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 20),
}
# c is always a perfect square so the buggy path lands on an integer
_SQUARES = {
    "elementary": LiteralRange([n * n for n in range(2, 10)]),
    "middle": LiteralRange([n * n for n in range(2, 13)]),
    "early_high_school": LiteralRange([n * n for n in range(2, 21)]),
}


def _exact_root(total, steps, label):
    root = math.isqrt(total)
    if root * root == total:
        steps.append(Step(f"{label} = sqrt({total}) = {root}"))
        return Rational(root)
    steps.append(Step(f"{label} = sqrt({total})"))
    return Sqrt(Lit(total))


def _correct_alg(p):
    x, c = p["x"], p["c"]
    sq = x * x
    total = sq + c
    steps = [
        Step(f"Substitute x = {x}: f({x}) = sqrt({x}^2 + {c})"),
        Step(f"{x}^2 + {c} = {sq} + {c} = {total}"),
    ]
    answer = _exact_root(total, steps, f"f({x})")
    return Trace(steps, answer)


def _buggy_alg(p):
    x, c = p["x"], p["c"]
    r = math.isqrt(c)
    steps = [
        Step(f"sqrt(x^2 + {c}) = sqrt(x^2) + sqrt({c})"),
        Step(f"sqrt(x^2) = x and sqrt({c}) = {r}"),
        Step(f"f({x}) = {x} + {r} = {x + r}"),
    ]
    return Trace(steps, Rational(x + r))


def _correct_pyth(p):
    a, b = p["a"], p["b"]
    total = a * a + b * b
    steps = [
        Step(f"distance = sqrt({a}^2 + {b}^2)"),
        Step(f"{a}^2 + {b}^2 = {a * a} + {b * b} = {total}"),
    ]
    answer = _exact_root(total, steps, "distance")
    return Trace(steps, answer)


def _buggy_pyth(p):
    a, b = p["a"], p["b"]
    steps = [
        Step(f"sqrt({a}^2 + {b}^2) = sqrt({a}^2) + sqrt({b}^2)"),
        Step(f"sqrt({a}^2) + sqrt({b}^2) = {a} + {b}"),
        Step(f"distance = {a + b}"),
    ]
    return Trace(steps, Rational(a + b))


_CORRECT = {"algebraic_expression": _correct_alg, "pythagorean_context": _correct_pyth}
_BUGGY = {"algebraic_expression": _buggy_alg, "pythagorean_context": _buggy_pyth}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="algebraic_expression",
            scaffold="variant",
            context_domain="abstract",
            params=[ParamSpec("c", _SQUARES), ParamSpec("x", _X)],
            statement="Evaluate f(x) = sqrt(x^2 + {c}) when x = {x}. What is f({x})?",
            example_params={"c": 25, "x": 8},
            never_coincident=True,
        ),
        Template(
            malrule=MALRULE,
            name="pythagorean_context",
            scaffold="context",
            context_domain="time_distance",
            params=[ParamSpec("a", _X), ParamSpec("b", _X)],
            statement=(
                "You walk {a} blocks east and {b} blocks north. "
                "What is the straight-line distance from your starting point?"
            ),
            example_params={"a": 8, "b": 3},
            never_coincident=True,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
