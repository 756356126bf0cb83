"""Parameter ranges, deterministic draws, and instance construction."""

from __future__ import annotations

import random

import pytest

from malkit.catalog import build_registry
from malkit.errors import ConstraintViolation, ExhaustedRejection
from malkit.generation import (
    BANDS,
    DecimalRange,
    IntRange,
    LiteralRange,
    MultiScaleRange,
    ParamSpec,
    Template,
    TokenRange,
    check_constraints,
    draw_params,
    instance_id_for,
    instantiate,
    render_statement,
    stream,
)
from malkit.registry import MalruleDef, MalruleId, MalruleMeta, Registry
from malkit.trace import Step, Trace
from malkit.values import FixedDecimal, Rational

REGISTRY = build_registry()


# Ranges


def test_int_range_enumeration():
    r = IntRange(3, 11, 2)
    assert r.size() == 5
    assert list(r.iter_all()) == [3, 5, 7, 9, 11]
    assert all(r.contains(v) for v in r.iter_all())
    assert not r.contains(4)
    assert not r.contains(13)
    assert not r.contains("7")
    with pytest.raises(ValueError):
        IntRange(5, 4)


def test_int_range_sampling_stays_in_range():
    r = IntRange(-9, 9)
    rng = random.Random(7)
    draws = {r.sample(rng) for _ in range(500)}
    assert draws <= set(r.iter_all())
    assert len(draws) > 10


def test_decimal_range_grid():
    r = DecimalRange("0.10", "0.99", 2)
    assert r.size() == 90
    first, last = r.at(0), r.at(89)
    assert (str(first), str(last)) == ("0.10", "0.99")
    assert r.contains(FixedDecimal.from_string("0.55"))
    # Same value written at another scale is a different literal.
    assert not r.contains(FixedDecimal.from_string("0.5"))
    assert not r.contains(55)
    with pytest.raises(ValueError):
        DecimalRange("0.9", "0.1", 1)
    with pytest.raises(ValueError):
        DecimalRange("0.123", "0.9", 1)  # bound finer than the grid


def test_multi_scale_range_spans_grids_in_order():
    r = MultiScaleRange(DecimalRange("0.1", "0.9", 1), DecimalRange("0.10", "0.99", 2))
    assert r.size() == 9 + 90
    assert str(r.at(0)) == "0.1"
    assert str(r.at(9)) == "0.10"
    assert str(r.at(98)) == "0.99"
    with pytest.raises(IndexError):
        r.at(99)
    assert r.contains(FixedDecimal.from_string("0.5"))
    assert r.contains(FixedDecimal.from_string("0.50"))
    assert len(list(r.iter_all())) == r.size()


def test_token_and_literal_ranges():
    t = TokenRange("x^2", "x^3")
    assert t.size() == 2 and list(t.iter_all()) == ["x^2", "x^3"]
    assert t.contains("x^3") and not t.contains("x^5")
    lit = LiteralRange([1, 5, 25])
    assert lit.size() == 3 and lit.at(2) == 25
    assert lit.contains(5) and not lit.contains(2)
    with pytest.raises(ValueError):
        TokenRange()
    with pytest.raises(ValueError):
        LiteralRange([])


# Deterministic streams


def test_stream_is_deterministic_and_keyed():
    a = [stream(7, "x", 1).random() for _ in range(3)]
    b = [stream(7, "x", 1).random() for _ in range(3)]
    assert a == b
    assert stream(7, "x", 1).random() != stream(7, "x", 2).random()
    assert stream(7, "x", 1).random() != stream(8, "x", 1).random()
    # Joining parts is not string concatenation: ("ab", "c") != ("a", "bc").
    assert stream(0, "ab", "c").random() != stream(0, "a", "bc").random()


# Param specs and templates


def test_param_spec_requires_every_band():
    with pytest.raises(ValueError):
        ParamSpec("a", {"middle": IntRange(1, 5)})
    with pytest.raises(ValueError):
        ParamSpec("a")
    broadcast = ParamSpec("a", IntRange(1, 5))
    assert all(broadcast.range_for(b).size() == 5 for b in BANDS)
    with pytest.raises(ValueError):
        broadcast.range_for("kindergarten")


def test_template_rejects_unknown_scaffold_and_stray_placeholders():
    fields = dict(
        malrule="algebra/toy_rule",
        name="default",
        scaffold="basic",
        context_domain="abstract",
        params=[ParamSpec("a", IntRange(1, 9))],
        statement="Compute {a}",
        example_params={"a": 3},
    )
    Template(**fields)
    with pytest.raises(ValueError):
        Template(**{**fields, "scaffold": "interpretive_dance"})
    with pytest.raises(ValueError):
        Template(**{**fields, "context_domain": "cryptozoology"})
    with pytest.raises(ValueError):
        Template(**{**fields, "statement": "Compute {a} marbles in {b} bags"})


def test_fill_derived_composes_in_order():
    template = Template(
        malrule="algebra/toy_rule",
        name="default",
        scaffold="basic",
        context_domain="abstract",
        params=[
            ParamSpec("a", IntRange(2, 5)),
            ParamSpec("twice", derive=lambda p: 2 * p["a"]),
            ParamSpec("plus_one", derive=lambda p: p["twice"] + 1),
        ],
        statement="{a} doubled is {twice}, then {plus_one}",
        example_params={"a": 2},
    )
    filled = template.fill_derived({"a": 4})
    assert filled == {"a": 4, "twice": 8, "plus_one": 9}
    assert [p.name for p in template.free_params()] == ["a"]
    assert check_constraints(template, filled)
    assert not check_constraints(template, {"a": 4, "twice": 9, "plus_one": 19})
    assert not check_constraints(template, {"a": 4})


def test_draw_params_respects_band():
    template = REGISTRY.get_template("subtraction/borrow_no_decrement", "default")
    for band, lo, hi in (("elementary", 10, 99), ("middle", 100, 999)):
        params = draw_params(template, stream(3, band), band)
        assert lo <= params["m"] <= hi
        assert lo <= params["s"] <= hi


def test_render_statement_uses_literal_digit_strings():
    template = REGISTRY.get_template("decimals/longer_is_larger", "measurement_context")
    params = {
        "p": FixedDecimal.from_string("0.50"),
        "q": FixedDecimal.from_string("0.479"),
    }
    text = render_statement(template, params)
    assert "0.50 kilometers" in text and "0.479 kilometers" in text
    with pytest.raises(ConstraintViolation):
        render_statement(template, {"p": FixedDecimal.from_string("0.5")})


# Instantiation


def test_instantiate_is_deterministic():
    kwargs = dict(seed=11, draw_index=4, grade_band="middle")
    a = instantiate(REGISTRY, "fractions/add_numerators_add_denominators", "default", **kwargs)
    b = instantiate(REGISTRY, "fractions/add_numerators_add_denominators", "default", **kwargs)
    assert a.to_record() == b.to_record()
    assert a.instance_id == instance_id_for(a.malrule, a.template, a.params, a.statement)
    c = instantiate(
        REGISTRY, "fractions/add_numerators_add_denominators", "default", 11, 5, "middle"
    )
    assert c.to_record() != a.to_record()


def test_instantiate_varies_with_seed():
    ids = {
        instantiate(REGISTRY, "algebra/change_side_change_sign", "default", seed, 0).instance_id
        for seed in range(12)
    }
    assert len(ids) > 6


def test_instance_record_is_json_ready():
    import json

    inst = instantiate(REGISTRY, "geometry/volume_formula_for_surface_area", "decimal_dimensions", 2, 0)
    record = inst.to_record()
    round_tripped = json.loads(json.dumps(record))
    assert round_tripped == record
    assert record["correct_steps"] and record["malrule_steps"]
    assert record["grade_band"] == "middle"
    assert record["seed"] == 2 and record["draw_index"] == 0


def test_instantiate_gives_up_when_every_draw_is_coincident():
    reg = Registry()
    same = lambda p, t: Trace([Step(f"a = {p['a']}")], Rational(p["a"]))
    reg.register(
        MalruleDef(
            meta=MalruleMeta(MalruleId("algebra", "toy_rule"), "buggy equals correct"),
            correct=same,
            malrule=same,
            templates=[
                Template(
                    malrule="algebra/toy_rule",
                    name="default",
                    scaffold="basic",
                    context_domain="abstract",
                    params=[ParamSpec("a", IntRange(1, 9))],
                    statement="Compute {a}",
                    example_params={"a": 3},
                )
            ],
        )
    )
    with pytest.raises(ExhaustedRejection):
        instantiate(reg, "algebra/toy_rule", "default", 0, 0)
