"""Comparing decimals by digit-string length instead of place value."""

from __future__ import annotations

from ..errors import MalruleNotTriggered
from ..generation import DecimalRange, MultiScaleRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Choice, FixedDecimal, Quantity

MALRULE = "decimals/longer_is_larger"

_SHORT_GRIDS = (
    DecimalRange("0.1", "0.9", 1),
    DecimalRange("0.10", "0.99", 2),
)
_FULL_GRIDS = _SHORT_GRIDS + (DecimalRange("0.100", "0.999", 3),)

_PQ = {
    "elementary": MultiScaleRange(*_SHORT_GRIDS),
    "middle": MultiScaleRange(*_FULL_GRIDS),
    "early_high_school": MultiScaleRange(*_FULL_GRIDS),
}


def _padded(value, scale):
    return FixedDecimal(value.mantissa * 10 ** (scale - value.scale), scale)


def _split(p):
    """(shorter-written, longer-written) of the two literals."""
    a, b = p["p"], p["q"]
    return (a, b) if a.scale < b.scale else (b, a)


def _scales_disagree(p):
    a, b = p["p"], p["q"]
    if a.scale == b.scale:
        return False
    shorter, longer = _split(p)
    # The misconception only shows when the longer-written number is smaller.
    return longer.to_rational() < shorter.to_rational()


def _lineup_steps(p):
    a, b = p["p"], p["q"]
    scale = max(a.scale, b.scale)
    aa, bb = _padded(a, scale), _padded(b, scale)
    big, small = (a, b) if a.to_rational() > b.to_rational() else (b, a)
    big_pad, small_pad = (aa, bb) if big is a else (bb, aa)
    lineup = Step(f"Line up the place values: {a} = {aa} and {b} = {bb}")
    compare = Step(f"{big_pad} > {small_pad}, so {big} is the larger number")
    return lineup, compare, big, small


def _correct_km(p):
    lineup, compare, big, _ = _lineup_steps(p)
    steps = [lineup, compare, Step(f"{big} kilometers")]
    return Trace(steps, Quantity(big, "kilometers"))


def _buggy_km(p):
    a, b = p["p"], p["q"]
    if a.scale == b.scale:
        raise MalruleNotTriggered("both numbers are written with the same number of digits")
    shorter, longer = _split(p)
    steps = [
        Step(f"{a} has {a.scale} decimal digits and {b} has {b.scale}"),
        Step(f"More digits means larger, so {longer} > {shorter}"),
        Step(f"{longer} kilometers"),
    ]
    return Trace(steps, Quantity(longer, "kilometers"))


def _pair_km(p):
    a, b = p["p"], p["q"]
    if a.scale == b.scale:
        return None
    shorter, longer = _split(p)
    big = a if a.to_rational() > b.to_rational() else b
    return Quantity(big, "kilometers"), Quantity(longer, "kilometers")


def _owner(p, literal):
    return "Maria" if literal is p["p"] else "Tom"


def _correct_money(p):
    lineup, _, big, small = _lineup_steps(p)
    winner = _owner(p, big)
    scale = max(p["p"].scale, p["q"].scale)
    steps = [
        lineup,
        Step(f"{_padded(big, scale)} > {_padded(small, scale)}, so {winner} has more"),
        Step(winner),
    ]
    return Trace(steps, Choice(winner))


def _buggy_money(p):
    a, b = p["p"], p["q"]
    if a.scale == b.scale:
        raise MalruleNotTriggered("both amounts are written with the same number of digits")
    shorter, longer = _split(p)
    winner = _owner(p, longer)
    steps = [
        Step(f"${a} has {a.scale} decimal digits and ${b} has {b.scale}"),
        Step(f"More digits means a larger amount, so {winner} has more"),
        Step(winner),
    ]
    return Trace(steps, Choice(winner))


def _pair_money(p):
    a, b = p["p"], p["q"]
    if a.scale == b.scale:
        return None
    _, longer = _split(p)
    big = a if a.to_rational() > b.to_rational() else b
    return Choice(_owner(p, big)), Choice(_owner(p, longer))


_CORRECT = {"measurement_context": _correct_km, "money_context": _correct_money}
_BUGGY = {"measurement_context": _buggy_km, "money_context": _buggy_money}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    common = dict(
        params=[ParamSpec("p", _PQ), ParamSpec("q", _PQ)],
        constraint=_scales_disagree,
    )
    templates = [
        Template(
            malrule=MALRULE,
            name="measurement_context",
            scaffold="context",
            context_domain="measurement",
            statement="Which is longer: {p} kilometers or {q} kilometers?",
            example_params={
                "p": FixedDecimal.from_string("0.5"),
                "q": FixedDecimal.from_string("0.479"),
            },
            # Pairs like 0.3 vs 0.299 grade as ties under the rounding policy;
            # generation rejects them, so no never_coincident claim here.
            answer_pair_fn=_pair_km,
            **common,
        ),
        Template(
            malrule=MALRULE,
            name="money_context",
            scaffold="context",
            context_domain="money",
            statement="Maria has ${p} and Tom has ${q}. Who has more money?",
            example_params={
                "p": FixedDecimal.from_string("0.61"),
                "q": FixedDecimal.from_string("0.214"),
            },
            answer_pair_fn=_pair_money,
            never_coincident=True,  # the constraint makes the named people differ
            **common,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
