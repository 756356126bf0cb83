"""Slope computed as change in x over change in y."""

from __future__ import annotations

from ..answers import render
from ..errors import MalruleNotTriggered
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "linear_equations/slope_is_delta_x_over_delta_y"

_COORD = {
    "elementary": IntRange(-9, 9),
    "middle": IntRange(-12, 12),
    "early_high_school": IntRange(-20, 20),
}
_HOURS = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(1, 24),
    "early_high_school": IntRange(1, 48),
}
_MILES = {
    "elementary": IntRange(1, 20),
    "middle": IntRange(1, 60),
    "early_high_school": IntRange(1, 99),
}


def _wrap(n):
    return f"({n})" if n < 0 else str(n)


def _deltas(p):
    dy = p["y2"] - p["y1"]
    dx = p["x2"] - p["x1"]
    return dy, dx


def _usable(p):
    dy, dx = _deltas(p)
    return dx != 0 and dy != 0 and abs(dx) != abs(dy)


def _delta_step(p):
    dy, dx = _deltas(p)
    return Step(
        f"Delta y = {p['y2']} - {_wrap(p['y1'])} = {dy} and "
        f"Delta x = {p['x2']} - {_wrap(p['x1'])} = {dx}"
    )


def _correct_points(p):
    dy, dx = _deltas(p)
    slope = Rational(dy, dx)
    steps = [
        _delta_step(p),
        Step(f"slope = Delta y / Delta x = {dy}/{dx}"),
        Step(f"slope = {render(slope)}"),
    ]
    return Trace(steps, slope)


def _buggy_points(p):
    dy, dx = _deltas(p)
    if dy == 0:
        raise MalruleNotTriggered("flipping the ratio would divide by zero")
    slope = Rational(dx, dy)
    steps = [
        _delta_step(p),
        Step(f"slope = Delta x / Delta y = {dx}/{dy}"),
        Step(f"slope = {render(slope)}"),
    ]
    return Trace(steps, slope)


def _points_step(p):
    return Step(f"Point 1 = ({p['x1']}, {p['y1']}) and Point 2 = ({p['x2']}, {p['y2']})")


def _correct_rate(p):
    dy, dx = _deltas(p)
    speed = Rational(dy, dx)
    steps = [
        _points_step(p),
        _delta_step(p),
        Step(f"speed = Delta y / Delta x = {dy}/{dx}"),
        Step(f"speed = {render(speed)}"),
    ]
    return Trace(steps, speed)


def _buggy_rate(p):
    dy, dx = _deltas(p)
    if dy == 0:
        raise MalruleNotTriggered("flipping the ratio would divide by zero")
    speed = Rational(dx, dy)
    steps = [
        _points_step(p),
        _delta_step(p),
        Step(f"speed = Delta x / Delta y = {dx}/{dy}"),
        Step(f"speed = {render(speed)}"),
    ]
    return Trace(steps, speed)


def _pair(p):
    dy, dx = _deltas(p)
    if dx == 0 or dy == 0:
        return None
    return Rational(dy, dx), Rational(dx, dy)


_CORRECT = {"basic_two_points": _correct_points, "real_world_rate": _correct_rate}
_BUGGY = {"basic_two_points": _buggy_points, "real_world_rate": _buggy_rate}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="basic_two_points",
            scaffold="basic",
            context_domain="abstract",
            params=[
                ParamSpec("x1", _COORD),
                ParamSpec("y1", _COORD),
                ParamSpec("x2", _COORD),
                ParamSpec("y2", _COORD),
            ],
            statement=(
                "Find the slope of the line passing through points "
                "({x1}, {y1}) and ({x2}, {y2})."
            ),
            example_params={"x1": -9, "y1": 2, "x2": 1, "y2": 8},
            constraint=_usable,
            answer_pair_fn=_pair,
        ),
        Template(
            malrule=MALRULE,
            name="real_world_rate",
            scaffold="context",
            context_domain="time_distance",
            params=[
                ParamSpec("x1", _HOURS),
                ParamSpec("y1", _MILES),
                ParamSpec("x2", _HOURS),
                ParamSpec("y2", _MILES),
            ],
            statement=(
                "After {x1} hours, a vehicle has gone {y1} miles. After {x2} "
                "hours, it has gone {y2} miles. Calculate the speed."
            ),
            example_params={"x1": 15, "y1": 18, "x2": 19, "y2": 5},
            constraint=_usable,
            answer_pair_fn=_pair,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
