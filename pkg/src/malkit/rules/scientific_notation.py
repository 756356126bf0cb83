"""Exponent for scientific notation taken from the count of zeros in the decimal."""

from __future__ import annotations

from ..answers import render
from ..errors import MalruleNotTriggered
from ..generation import LiteralRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Boolean, FixedDecimal, SciNotation

MALRULE = "scientific_notation/count_all_zeros_for_exponent"


def _small_decimals(leads, trails, guard):
    """Decimals 0.0..0 d1 d2 d3 0..0 with `lead` zeros after the point and `trail` after.

    d3 stays nonzero so the significand length is unambiguous. With guard on,
    values below 2 x 10^-3 are excluded: there the buggy and true values can
    sit within the grading tolerance of each other.
    """
    values = []
    for lead in leads:
        for d1 in range(1, 10):
            if guard and lead >= 2 and d1 < 2:
                continue
            for d2 in range(10):
                for d3 in range(1, 10):
                    for trail in trails:
                        mantissa = (d1 * 100 + d2 * 10 + d3) * 10**trail
                        values.append(FixedDecimal(mantissa, lead + 3 + trail))
    return LiteralRange(values)


def _true_sci(v):
    return SciNotation(v, 0).canonical()


def _zeros(v):
    return str(v).count("0")


_V_WRITE = {
    "elementary": _small_decimals([1], [1, 2], True),
    "middle": _small_decimals([1, 2], [1, 2, 3], True),
    "early_high_school": _small_decimals([1, 2], [1, 2, 3, 4], True),
}
_V_VERIFY = {
    "elementary": _small_decimals([1, 2], [1, 2], False),
    "middle": _small_decimals([1, 2, 3, 4], [1, 2, 3], False),
    "early_high_school": _small_decimals([1, 2, 3, 4, 5], [1, 2, 3, 4], False),
}


def _correct_write(p):
    v = p["v"]
    sci = _true_sci(v)
    steps = [
        Step(f"Move the decimal point {abs(sci.exponent)} places to the right: coefficient {sci.coefficient}"),
        Step(f"{v} = {render(sci)}"),
    ]
    return Trace(steps, sci)


def _buggy_write(p):
    v = p["v"]
    sci = _true_sci(v)
    zeros = _zeros(v)
    if -zeros == sci.exponent:
        raise MalruleNotTriggered("the zero count happens to be the true exponent")
    claim = SciNotation(sci.coefficient, -zeros)
    steps = [
        Step(f"Count the zeros in {v}: {zeros}"),
        Step(f"Coefficient: {sci.coefficient}"),
        Step(f"Exponent: -{zeros}"),
        Step(f"{v} = {render(claim)}"),
    ]
    return Trace(steps, claim)


def _correct_verify(p):
    v = p["v"]
    sci = _true_sci(v)
    claimed = -_zeros(v)
    steps = [
        Step(f"{v} = {render(sci)}"),
        Step(f"The claim uses exponent {claimed}, but the true exponent is {sci.exponent}"),
        Step("no"),
    ]
    return Trace(steps, Boolean(False))


def _buggy_verify(p):
    v = p["v"]
    sci = _true_sci(v)
    zeros = _zeros(v)
    if -zeros == sci.exponent:
        raise MalruleNotTriggered("the zero count happens to be the true exponent")
    steps = [
        Step(f"Count the zeros in {v}: {zeros}"),
        Step(f"{v} = {sci.coefficient} x 10^-{zeros}"),
        Step("The claim matches: yes"),
    ]
    return Trace(steps, Boolean(True))


_CORRECT = {"small_decimal_trailing_zero": _correct_write, "comparison_verification": _correct_verify}
_BUGGY = {"small_decimal_trailing_zero": _buggy_write, "comparison_verification": _buggy_verify}


def _correct(params, template):
    return _CORRECT[template.name](params)


def _buggy(params, template):
    return _BUGGY[template.name](params)


def build(meta):
    templates = [
        Template(
            malrule=MALRULE,
            name="small_decimal_trailing_zero",
            scaffold="basic",
            context_domain="abstract",
            params=[ParamSpec("v", _V_WRITE)],
            statement="Write {v} in scientific notation.",
            example_params={"v": FixedDecimal.from_string("0.010500")},
            # Trailing zeros inflate the count, so -zeros < true exponent on
            # every in-range value, and the guarded ranges keep the two
            # readings farther apart than the grading tolerance.
            never_coincident=True,
        ),
        Template(
            malrule=MALRULE,
            name="comparison_verification",
            scaffold="variant",
            context_domain="abstract",
            params=[
                ParamSpec("v", _V_VERIFY),
                ParamSpec("coeff", derive=lambda p: str(_true_sci(p["v"]).coefficient)),
                ParamSpec("exp", derive=lambda p: -_zeros(p["v"])),
            ],
            statement="Is {v} equal to {coeff} x 10^{exp}?",
            example_params={"v": FixedDecimal.from_string("0.00002050")},
            never_coincident=True,  # yes never grades equal to no
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
