"""Column subtraction that adds ten when needed but never decrements the lender."""

from __future__ import annotations

from ..errors import MalruleNotTriggered
from ..generation import IntRange, ParamSpec, Template
from ..registry import MalruleDef
from ..trace import Step, Trace
from ..values import Rational

MALRULE = "subtraction/borrow_no_decrement"

_M = {
    "elementary": IntRange(10, 99),
    "middle": IntRange(100, 999),
    "early_high_school": IntRange(1000, 9999),
}
_BAND_WIDTH = {"elementary": 2, "middle": 3, "early_high_school": 4}

_PLACES = ("ones", "tens", "hundreds", "thousands")


def _digits(n, width):
    # Least significant first.
    return [int(ch) for ch in reversed(str(n).zfill(width))]


def _needs_borrow(p):
    m, s = p["m"], p["s"]
    if m <= s:
        return False
    width = len(str(m))
    mm, ss = _digits(m, width), _digits(s, width)
    return any(t < b for t, b in zip(mm, ss))


def _correct_sub(p):
    m, s = p["m"], p["s"]
    width = len(str(m))
    mm, ss = _digits(m, width), _digits(s, width)
    steps = []
    borrow = 0
    for i, (t, b) in enumerate(zip(mm, ss)):
        place = _PLACES[i].capitalize()
        t -= borrow
        if t < b:
            steps.append(Step(f"{place}: borrow from the {_PLACES[i + 1]}, {t + 10} - {b} = {t + 10 - b}"))
            borrow = 1
        else:
            steps.append(Step(f"{place}: {t} - {b} = {t - b}"))
            borrow = 0
    total = m - s
    steps.append(Step(f"{m} - {s} = {total}"))
    return Trace(steps, Rational(total))


def _buggy_sub(p):
    m, s = p["m"], p["s"]
    if m <= s:
        raise MalruleNotTriggered("nothing to borrow when the top number is not larger")
    width = len(str(m))
    mm, ss = _digits(m, width), _digits(s, width)
    if all(t >= b for t, b in zip(mm, ss)):
        raise MalruleNotTriggered("no column needs a borrow")
    steps = []
    value = 0
    for i, (t, b) in enumerate(zip(mm, ss)):
        place = _PLACES[i].capitalize()
        if t < b:
            # Takes the ten but never pays it back.
            steps.append(Step(f"{place}: {t + 10} - {b} = {t + 10 - b}"))
            value += (t + 10 - b) * 10**i
        else:
            steps.append(Step(f"{place}: {t} - {b} = {t - b}"))
            value += (t - b) * 10**i
    steps.append(Step(f"The digits give {value}"))
    return Trace(steps, Rational(value))


def _answer_pair(p):
    m, s = p["m"], p["s"]
    if m <= s:
        return None
    width = len(str(m))
    mm, ss = _digits(m, width), _digits(s, width)
    extra = sum(10 ** (i + 1) for i, (t, b) in enumerate(zip(mm, ss)) if t < b)
    if extra == 0:
        return None
    return Rational(m - s), Rational(m - s + extra)


def _capacity(band):
    # Pairs m > s drawn from the band's fixed width that need at least one
    # borrow.  Digitwise-dominant pairs (no borrow, m >= s) factorize per
    # column: 45 ways for the leading digits, 55 for each of the k others.
    k = _BAND_WIDTH[band] - 1
    n = 9 * 10**k
    return n * (n - 1) // 2 - 45 * 55**k + n


def _correct(params, template):
    return _correct_sub(params)


def _buggy(params, template):
    return _buggy_sub(params)


def build(meta):
    common = dict(
        params=[ParamSpec("m", _M), ParamSpec("s", _M)],
        constraint=_needs_borrow,
        capacity_fn=_capacity,
        answer_pair_fn=_answer_pair,
        never_coincident=True,  # the skipped decrements add at least 10
    )
    templates = [
        Template(
            malrule=MALRULE,
            name="default",
            scaffold="basic",
            context_domain="abstract",
            statement="Calculate: {m} - {s}",
            example_params={"m": 408, "s": 384},
            **common,
        ),
        Template(
            malrule=MALRULE,
            name="word_problem_context",
            scaffold="word_problem",
            context_domain="money",
            statement=(
                "A store had {m} items in stock. After selling {s} items, "
                "how many remain?"
            ),
            example_params={"m": 561, "s": 526},
            **common,
        ),
    ]
    return MalruleDef(meta=meta, correct=_correct, malrule=_buggy, templates=templates)
