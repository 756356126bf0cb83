"""Bulk properties of the executable rules.

Every template gets 1000 deterministic draws spread across all grade bands.
The correct answer is recomputed here from the raw parameters with
fractions.Fraction arithmetic (or direct categorical reasoning), so the
package's own value types never vouch for themselves. The same draws check
that the buggy procedure fires on every instance, that its answer grades
apart from the correct one, and that both traces end on their answer.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from malkit.answers import canonicalize, render
from malkit.matching import DEFAULT_POLICY, answers_match
from malkit.catalog import build_registry
from malkit.generation import BANDS, check_constraints, instantiate
from malkit.values import Boolean, FixedDecimal, Quantity, Rational, SciNotation

SEED = 20260818
DRAWS = 1000

REGISTRY = build_registry()
TEMPLATE_IDS = [
    (malrule, template.name)
    for malrule in REGISTRY.executable_ids()
    for template in REGISTRY.templates_for(malrule)
]


def _frac(value):
    """A parameter or answer scalar as a Fraction, from raw slots only."""
    if isinstance(value, FixedDecimal):
        return Fraction(value.mantissa, 10**value.scale)
    if isinstance(value, Rational):
        return Fraction(value.num, value.den)
    if isinstance(value, SciNotation):
        return _frac(value.coefficient) * Fraction(10) ** value.exponent
    if isinstance(value, int):
        return Fraction(value)
    raise AssertionError(f"no exact numeric reading for {value!r}")


def _expect_num(answer, expected):
    if isinstance(answer, Quantity):
        raise AssertionError(f"unexpected unit on {answer!r}")
    assert _frac(answer) == expected, f"{render(answer)} != {expected}"


def _expect_text(answer, expected):
    assert render(answer) == expected, f"{render(answer)!r} != {expected!r}"


def _expect_qty(answer, expected, unit):
    assert isinstance(answer, Quantity), f"expected a quantity, got {answer!r}"
    assert answer.unit == unit
    assert _frac(answer.value) == expected, f"{render(answer)} != {expected} {unit}"


# Correct-side oracles. Each recomputes the answer from the instance
# parameters without touching the package's arithmetic.


def _div_correct(p, ans):
    _expect_num(ans, Fraction(p["a"], p["b"]))


def _div_buggy(p, ans):
    _expect_num(ans, Fraction(p["b"], p["a"]))


def _sub_correct(p, ans):
    _expect_num(ans, Fraction(p["m"] - p["s"]))


def _sub_buggy(p, ans):
    # Skipping every decrement leaves m - s plus 10^(i+1) per borrowed column.
    m, s = p["m"], p["s"]
    width = len(str(m))
    top, bottom = str(m).zfill(width), str(s).zfill(width)
    extra = sum(10 ** (width - i) for i in range(width) if top[i] < bottom[i])
    assert extra > 0, f"{m} - {s} never borrows"
    _expect_num(ans, Fraction(m - s + extra))


_MODE_KEYS = ("d1", "d2", "d3", "d4", "d5")


def _mode_correct(p, ans):
    data = [p[k] for k in _MODE_KEYS]
    assert len(set(data)) == len(data)
    _expect_text(ans, "none")


def _mode_buggy(p, ans):
    _expect_num(ans, Fraction(max(p[k] for k in _MODE_KEYS)))


def _mode_pair_correct(p, ans):
    assert len({p[f"b{i}"] for i in range(1, 7)}) == 6
    _expect_text(ans, "A")


def _mode_pair_buggy(p, ans):
    _expect_text(ans, "both")


def _alg_correct(p, ans):
    _expect_num(ans, Fraction(p["r"] - p["p"] + p["q"], p["c"]))


def _alg_buggy(p, ans):
    _expect_num(ans, Fraction(p["r"] + p["p"] - p["q"], p["c"]))


def _plan_correct(p, ans):
    _expect_num(ans, Fraction(p["bill"] - p["base"], p["rate"]))


def _plan_buggy(p, ans):
    _expect_num(ans, Fraction(p["bill"] + p["base"], p["rate"]))


def _decade_exponent(value):
    """The e with value / 10^e in [1, 10), found by repeated division."""
    assert value > 0
    e = 0
    while value >= 10:
        value /= 10
        e += 1
    while value < 1:
        value *= 10
        e -= 1
    return e


def _sci_write_correct(p, ans):
    v = _frac(p["v"])
    assert isinstance(ans, SciNotation), f"expected scientific notation, got {ans!r}"
    assert _frac(ans) == v, "conversion changed the value"
    coeff = _frac(ans.coefficient)
    assert 1 <= coeff < 10, f"coefficient {coeff} not normalized"
    assert ans.exponent == _decade_exponent(v)


def _sci_write_buggy(p, ans):
    v = _frac(p["v"])
    zeros = str(p["v"]).count("0")
    assert isinstance(ans, SciNotation)
    assert ans.exponent == -zeros
    true_coeff = v / Fraction(10) ** _decade_exponent(v)
    assert _frac(ans) == true_coeff * Fraction(10) ** -zeros


def _sci_verify_correct(p, ans):
    # The stated claim really is wrong: the zero count never lands on the
    # true exponent for in-range values, so "no" is the correct verdict.
    v = _frac(p["v"])
    zeros = str(p["v"]).count("0")
    assert -zeros != _decade_exponent(v), f"claimed exponent is accidentally right for {p['v']}"
    assert p["exp"] == -zeros
    assert isinstance(ans, Boolean) and ans.value is False


def _sci_verify_buggy(p, ans):
    assert isinstance(ans, Boolean) and ans.value is True


def _abs_sub_correct(p, ans):
    _expect_num(ans, Fraction(abs(p["v"] - p["c"])))


def _abs_sub_buggy(p, ans):
    _expect_num(ans, Fraction(abs(p["v"]) - p["c"]))


def _abs_drone_correct(p, ans):
    _expect_qty(ans, Fraction(abs(p["v"] + p["c"])), "meters")


def _abs_drone_buggy(p, ans):
    _expect_qty(ans, Fraction(abs(p["v"]) + p["c"]), "meters")


def _longer_written(p):
    return p["p"] if p["p"].scale > p["q"].scale else p["q"]


def _km_correct(p, ans):
    _expect_qty(ans, max(_frac(p["p"]), _frac(p["q"])), "kilometers")


def _km_buggy(p, ans):
    _expect_qty(ans, _frac(_longer_written(p)), "kilometers")


def _money_correct(p, ans):
    _expect_text(ans, "Maria" if _frac(p["p"]) > _frac(p["q"]) else "Tom")


def _money_buggy(p, ans):
    _expect_text(ans, "Maria" if _longer_written(p) is p["p"] else "Tom")


def _pow_two_correct(p, ans):
    _expect_num(ans, Fraction(p["a"] + p["b"]) ** p["n"])


def _pow_two_buggy(p, ans):
    _expect_num(ans, Fraction(p["a"] ** p["n"] + p["b"] ** p["n"]))


def _pow_three_correct(p, ans):
    _expect_num(ans, Fraction(p["a"] + p["b"] + p["c"]) ** p["n"])


def _pow_three_buggy(p, ans):
    _expect_num(ans, Fraction(sum(p[k] ** p["n"] for k in "abc")))


def _prime_correct(p, ans):
    _expect_text(ans, "prime")


def _factor_basic_buggy(p, ans):
    assert p["k2"] == p["k"] ** 2
    _expect_text(ans, f"(x + {p['k']})^2")


def _factor_two_vars_buggy(p, ans):
    _expect_text(ans, f"({p['a']}x + {p['b']}y)^2")


def _frac_add_correct(p, ans):
    _expect_num(ans, Fraction(p["p"], p["q"]) + Fraction(p["r"], p["s"]))


def _frac_add_buggy(p, ans):
    _expect_num(ans, Fraction(p["p"] + p["r"], p["q"] + p["s"]))


def _surface_correct(p, ans):
    l, w, h = (_frac(p[k]) for k in "lwh")
    _expect_num(ans, 2 * (l * w + l * h + w * h))


def _volume_buggy(p, ans):
    l, w, h = (_frac(p[k]) for k in "lwh")
    _expect_num(ans, l * w * h)


def _slope_correct(p, ans):
    _expect_num(ans, Fraction(p["y2"] - p["y1"], p["x2"] - p["x1"]))


def _slope_buggy(p, ans):
    _expect_num(ans, Fraction(p["x2"] - p["x1"], p["y2"] - p["y1"]))


def _fn_power(p):
    return int(p["f"].split("^", 1)[1])


def _fn_correct(p, ans):
    _expect_num(ans, Fraction(p["a"] + p["b"]) ** _fn_power(p))


def _fn_buggy(p, ans):
    n = _fn_power(p)
    _expect_num(ans, Fraction(p["a"] ** n + p["b"] ** n))


def _absfn_correct(p, ans):
    _expect_num(ans, Fraction(abs(p["a"] + p["b"] + p["k"])))


def _absfn_buggy(p, ans):
    _expect_num(ans, Fraction(abs(p["a"] + p["k"]) + abs(p["b"] + p["k"])))


def _ooo_correct(p, ans):
    _expect_num(ans, Fraction(p["a"] - p["b"] + p["c"]))


def _ooo_buggy(p, ans):
    _expect_num(ans, Fraction(p["a"] - (p["b"] + p["c"])))


def _temp_correct(p, ans):
    _expect_qty(ans, Fraction(p["t"] - p["d"] + p["r"]), "°F")


def _temp_buggy(p, ans):
    _expect_qty(ans, Fraction(p["t"] - (p["d"] + p["r"])), "°F")


def _expect_root(ans, total):
    root = math.isqrt(total)
    if root * root == total:
        _expect_num(ans, Fraction(root))
    else:
        _expect_text(ans, f"sqrt({total})")


def _radical_correct(p, ans):
    _expect_root(ans, p["x"] ** 2 + p["c"])


def _radical_buggy(p, ans):
    root = math.isqrt(p["c"])
    assert root * root == p["c"], f"{p['c']} is not a perfect square"
    _expect_num(ans, Fraction(p["x"] + root))


def _pythagoras_correct(p, ans):
    _expect_root(ans, p["a"] ** 2 + p["b"] ** 2)


def _pythagoras_buggy(p, ans):
    _expect_num(ans, Fraction(p["a"] + p["b"]))


ORACLES = {
    ("multiplication_division/divide_larger_by_smaller_always", "word_problem_sharing"): (_div_correct, _div_buggy),
    ("multiplication_division/divide_larger_by_smaller_always", "word_problem_measurement"): (_div_correct, _div_buggy),
    ("subtraction/borrow_no_decrement", "default"): (_sub_correct, _sub_buggy),
    ("subtraction/borrow_no_decrement", "word_problem_context"): (_sub_correct, _sub_buggy),
    ("statistics/mode_must_exist", "basic_no_mode"): (_mode_correct, _mode_buggy),
    ("statistics/mode_must_exist", "comparison_problem"): (_mode_pair_correct, _mode_pair_buggy),
    ("algebra/change_side_change_sign", "default"): (_alg_correct, _alg_buggy),
    ("algebra/change_side_change_sign", "word_problem_context"): (_plan_correct, _plan_buggy),
    ("scientific_notation/count_all_zeros_for_exponent", "small_decimal_trailing_zero"): (_sci_write_correct, _sci_write_buggy),
    ("scientific_notation/count_all_zeros_for_exponent", "comparison_verification"): (_sci_verify_correct, _sci_verify_buggy),
    ("absolute_value/absolute_value_distributes", "basic_subtraction"): (_abs_sub_correct, _abs_sub_buggy),
    ("absolute_value/absolute_value_distributes", "word_problem"): (_abs_drone_correct, _abs_drone_buggy),
    ("decimals/longer_is_larger", "measurement_context"): (_km_correct, _km_buggy),
    ("decimals/longer_is_larger", "money_context"): (_money_correct, _money_buggy),
    ("exponents/distribute_exponent_over_addition", "simple_two_term"): (_pow_two_correct, _pow_two_buggy),
    ("exponents/distribute_exponent_over_addition", "three_term"): (_pow_three_correct, _pow_three_buggy),
    ("factoring/sum_of_squares_factors", "basic_sum_of_squares"): (_prime_correct, _factor_basic_buggy),
    ("factoring/sum_of_squares_factors", "both_variables"): (_prime_correct, _factor_two_vars_buggy),
    ("fractions/add_numerators_add_denominators", "default"): (_frac_add_correct, _frac_add_buggy),
    ("fractions/add_numerators_add_denominators", "word_problem_context"): (_frac_add_correct, _frac_add_buggy),
    ("geometry/volume_formula_for_surface_area", "decimal_dimensions"): (_surface_correct, _volume_buggy),
    ("geometry/volume_formula_for_surface_area", "word_problem"): (_surface_correct, _volume_buggy),
    ("linear_equations/slope_is_delta_x_over_delta_y", "basic_two_points"): (_slope_correct, _slope_buggy),
    ("linear_equations/slope_is_delta_x_over_delta_y", "real_world_rate"): (_slope_correct, _slope_buggy),
    ("functions/function_distributive_property", "default"): (_fn_correct, _fn_buggy),
    ("functions/function_distributive_property", "absolute_value_function"): (_absfn_correct, _absfn_buggy),
    ("order_of_operations/addition_before_subtraction_always", "simple_expression"): (_ooo_correct, _ooo_buggy),
    ("order_of_operations/addition_before_subtraction_always", "temperature_change"): (_temp_correct, _temp_buggy),
    ("radicals/distribute_square_root_over_addition", "algebraic_expression"): (_radical_correct, _radical_buggy),
    ("radicals/distribute_square_root_over_addition", "pythagorean_context"): (_pythagoras_correct, _pythagoras_buggy),
}


def check_instance(inst, template):
    """Every per-draw property, shared with the acceptance suite."""
    correct_oracle, buggy_oracle = ORACLES[(inst.malrule, inst.template)]
    assert check_constraints(template, inst.params), inst.params
    assert "{" not in inst.statement and "}" not in inst.statement
    correct_oracle(inst.params, inst.correct.answer)
    buggy_oracle(inst.params, inst.buggy.answer)
    assert not answers_match(inst.buggy.answer, inst.correct.answer, DEFAULT_POLICY), (
        f"coincident instance survived generation: {inst.params}"
    )
    for trace in (inst.correct, inst.buggy):
        last = trace.steps[-1]
        assert last.value is not None
        assert render(canonicalize(last.value)) == render(trace.answer)


def iter_draws(malrule, name, draws=DRAWS, seed=SEED):
    for i in range(draws):
        yield instantiate(REGISTRY, malrule, name, seed, i, grade_band=BANDS[i % len(BANDS)])


def test_oracle_table_is_complete():
    assert sorted(ORACLES) == sorted(TEMPLATE_IDS)
    assert len(TEMPLATE_IDS) == 30


@pytest.mark.parametrize(
    "malrule,name",
    TEMPLATE_IDS,
    ids=[f"{m.split('/', 1)[0]}-{n}" for m, n in TEMPLATE_IDS],
)
def test_bulk_draws_satisfy_oracles(malrule, name):
    template = REGISTRY.get_template(malrule, name)
    seen = set()
    for inst in iter_draws(malrule, name):
        check_instance(inst, template)
        seen.add(inst.instance_id)
    assert len(seen) > 10, "the draw stream barely varies"
