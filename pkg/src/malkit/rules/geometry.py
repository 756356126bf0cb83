"""Surface area of a rectangular prism computed with the volume formula."""

from __future__ import annotations

from ..generation import DecimalRange, IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import FixedDecimal, Rational

MALRULE = "geometry/volume_formula_for_surface_area"

_DIM_DEC = {
    "elementary": DecimalRange("1.0", "9.9", 1),
    "middle": DecimalRange("1.0", "9.9", 1),
    "early_high_school": DecimalRange("1.0", "19.9", 1),
}
_DIM_INT = {
    "elementary": IntRange(1, 9),
    "middle": IntRange(2, 12),
    "early_high_school": IntRange(2, 20),
}

_TWO = FixedDecimal(2, 0)


def _correct_dec(p):
    l, w, h = p["l"], p["w"], p["h"]
    lw, lh, wh = (l * w).trimmed(), (l * h).trimmed(), (w * h).trimmed()
    total = (lw + lh + wh).trimmed()
    sa = (_TWO * total).trimmed()
    steps = [
        Step("Surface area = 2(lw + lh + wh)"),
        Step(f"lw = {lw}, lh = {lh}, wh = {wh}"),
        Step(f"2 * {total} = {sa}"),
    ]
    return Trace(steps, sa)


def _buggy_dec(p):
    l, w, h = p["l"], p["w"], p["h"]
    v = (l * w * h).trimmed()
    steps = [
        Step("A = l * w * h"),
        Step(f"{l} * {w} * {h} = {v}"),
    ]
    return Trace(steps, v)


def _pair_dec(p):
    l, w, h = p["l"], p["w"], p["h"]
    sa = (_TWO * ((l * w) + (l * h) + (w * h))).trimmed()
    return sa, (l * w * h).trimmed()


def _correct_int(p):
    l, w, h = p["l"], p["w"], p["h"]
    lw, lh, wh = l * w, l * h, w * h
    total = lw + lh + wh
    sa = 2 * total
    steps = [
        Step("Surface area = 2(lw + lh + wh)"),
        Step(f"lw = {lw}, lh = {lh}, wh = {wh}"),
        Step(f"2 * {total} = {sa}"),
    ]
    return Trace(steps, Rational(sa))


def _buggy_int(p):
    l, w, h = p["l"], p["w"], p["h"]
    v = l * w * h
    steps = [
        Step("A = l * w * h"),
        Step(f"{l} * {w} * {h} = {v}"),
    ]
    return Trace(steps, Rational(v))


def _pair_int(p):
    l, w, h = p["l"], p["w"], p["h"]
    return Rational(2 * (l * w + l * h + w * h)), Rational(l * w * h)


_CORRECT = {"decimal_dimensions": _correct_dec, "word_problem": _correct_int}
_BUGGY = {"decimal_dimensions": _buggy_dec, "word_problem": _buggy_int}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="decimal_dimensions",
            scaffold="variant",
            context_domain="measurement",
            params=[ParamSpec("l", _DIM_DEC), ParamSpec("w", _DIM_DEC), ParamSpec("h", _DIM_DEC)],
            statement=(
                "Find the surface area of a rectangular prism with length {l} cm, "
                "width {w} cm, and height {h} cm."
            ),
            example_params={
                "l": FixedDecimal.from_string("4.1"),
                "w": FixedDecimal.from_string("5.4"),
                "h": FixedDecimal.from_string("3.0"),
            },
            # Near-cubes can make volume and surface area agree (6 x 6 x 6
            # gives 216 for both); generation rejects such draws.
            answer_pair_fn=_pair_dec,
        ),
        Template(
            malrule=MALRULE,
            name="word_problem",
            scaffold="word_problem",
            context_domain="measurement",
            params=[ParamSpec("l", _DIM_INT), ParamSpec("w", _DIM_INT), ParamSpec("h", _DIM_INT)],
            statement=(
                "A storage container measures {l} feet long, {w} feet wide, and "
                "{h} feet tall. What is the total surface area that needs to be "
                "painted?"
            ),
            example_params={"l": 4, "w": 8, "h": 8},
            answer_pair_fn=_pair_int,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
