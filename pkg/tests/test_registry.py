"""Catalog shape, registry lookups, and registration-time validation."""

from __future__ import annotations

import pytest

from malkit.catalog import build_registry, iter_catalog_records
from malkit.errors import (
    ConstraintViolation,
    DuplicateId,
    UnknownId,
    UnknownTemplate,
    ValidationFailed,
)
from malkit.generation import IntRange, ParamSpec, Template
from malkit.registry import (
    CATEGORY_TO_NCTM,
    NCTM_CATEGORIES,
    NCTM_TO_STRAND,
    STRANDS,
    MalruleDef,
    MalruleId,
    MalruleMeta,
    Registry,
)
from malkit.rules import SEED_MALRULES
from malkit.trace import Step, Trace
from malkit.values import Rational

REGISTRY = build_registry()


def _toy_template(**overrides):
    fields = dict(
        malrule="algebra/toy_rule",
        name="default",
        scaffold="basic",
        context_domain="abstract",
        params=[ParamSpec("a", IntRange(1, 9))],
        statement="Compute {a}",
        example_params={"a": 3},
    )
    fields.update(overrides)
    return Template(**fields)


def _toy_def(template=None, correct=None, malrule=None):
    meta = MalruleMeta(MalruleId("algebra", "toy_rule"), "a throwaway rule for tests")
    correct = correct or (lambda p, t: Trace([Step(f"a = {p['a']}")], Rational(p["a"])))
    malrule = malrule or (lambda p, t: Trace([Step("off by one")], Rational(p["a"] + 1)))
    templates = [template if template is not None else _toy_template()]
    return MalruleDef(meta=meta, correct=correct, malrule=malrule, templates=templates)


# Catalog shape


def test_catalog_counts():
    ids = REGISTRY.malrule_ids()
    assert len(ids) == 101
    assert len(set(ids)) == 101
    assert len(REGISTRY.executable_ids()) == 15
    assert sum(len(REGISTRY.catalog_template_names(m)) for m in ids) == 503
    assert sum(len(REGISTRY.templates_for(m)) for m in REGISTRY.executable_ids()) == 30


def test_strand_totals():
    counts = {}
    for malrule in REGISTRY.malrule_ids():
        strand = REGISTRY.get_meta(malrule).strand
        counts[strand] = counts.get(strand, 0) + 1
    assert counts == {
        "number_operations": 53,
        "algebra": 36,
        "geometry_measurement": 8,
        "data_modeling": 4,
    }


def test_catalog_records_are_well_formed():
    records = list(iter_catalog_records())
    assert len(records) == 101
    for rec in records:
        assert rec["category"] in CATEGORY_TO_NCTM
        assert rec["description"].strip()
        names = rec.get("templates", ())
        assert names, f"{rec['category']}/{rec['name']} lists no templates"
        assert len(set(names)) == len(names)


def test_executable_set_matches_seed_modules():
    assert set(REGISTRY.executable_ids()) == set(SEED_MALRULES)
    # Executable ids come back in catalog order, not registration order.
    order = {m: i for i, m in enumerate(REGISTRY.malrule_ids())}
    positions = [order[m] for m in REGISTRY.executable_ids()]
    assert positions == sorted(positions)


def test_executable_templates_match_catalog_names():
    for malrule in REGISTRY.executable_ids():
        declared = set(REGISTRY.catalog_template_names(malrule))
        built = {t.name for t in REGISTRY.templates_for(malrule)}
        assert built <= declared


def test_category_rollups_are_total():
    assert set(CATEGORY_TO_NCTM.values()) == set(NCTM_CATEGORIES)
    assert set(NCTM_TO_STRAND) == set(NCTM_CATEGORIES)
    assert set(NCTM_TO_STRAND.values()) == set(STRANDS)


def test_change_side_description_keeps_ascii_transcription():
    meta = REGISTRY.get_meta("algebra/change_side_change_sign")
    assert "x + a = b -> x = b + a" in meta.description


def test_fmra_falls_back_to_description():
    explicit = [rec for rec in iter_catalog_records() if rec.get("fmra")]
    assert len(explicit) == 1
    assert (
        REGISTRY.fmra_description("radicals/distribute_square_root_over_addition")
        == "Students distribute square root over addition: sqrt(a^2+b^2) = a + b"
    )
    meta = REGISTRY.get_meta("subtraction/borrow_no_decrement")
    assert meta.fmra is None
    assert REGISTRY.fmra_description("subtraction/borrow_no_decrement") == meta.description


# Malrule ids


def test_malrule_id_round_trip():
    mid = MalruleId.parse("fractions/add_numerators_add_denominators")
    assert str(mid) == "fractions/add_numerators_add_denominators"
    assert mid == MalruleId("fractions", "add_numerators_add_denominators")
    assert hash(mid) == hash(MalruleId("fractions", "add_numerators_add_denominators"))
    assert mid != MalruleId("fractions", "other")


def test_malrule_id_rejects_bad_input():
    with pytest.raises(ValueError):
        MalruleId.parse("no_slash_here")
    with pytest.raises(ValueError):
        MalruleId("not_a_category", "x")


# Lookup errors


def test_unknown_malrule_raises():
    with pytest.raises(UnknownId):
        REGISTRY.get_meta("algebra/launder_coefficients")
    with pytest.raises(UnknownId):
        REGISTRY.solve_correct("algebra/launder_coefficients", {}, "default")


def test_metadata_only_malrule_has_no_procedures():
    metadata_only = next(
        m for m in REGISTRY.malrule_ids() if m not in set(REGISTRY.executable_ids())
    )
    with pytest.raises(UnknownId):
        REGISTRY.templates_for(metadata_only)
    with pytest.raises(UnknownId):
        REGISTRY.get_template(metadata_only, "default")


def test_unknown_template_raises():
    with pytest.raises(UnknownTemplate):
        REGISTRY.get_template("subtraction/borrow_no_decrement", "no_such_template")


def test_out_of_range_params_rejected_unless_unvalidated():
    malrule = "subtraction/borrow_no_decrement"
    params = {"m": 23, "s": 410}  # top smaller than bottom: constraint fails
    with pytest.raises(ConstraintViolation):
        REGISTRY.solve_correct(malrule, params, "default")
    trace = REGISTRY.solve_correct(malrule, params, "default", validate=False)
    assert trace.answer == Rational(23 - 410)


# Registration


def test_duplicate_metadata_rejected():
    reg = Registry()
    meta = MalruleMeta(MalruleId("algebra", "toy_rule"), "desc")
    reg.add_metadata(meta)
    with pytest.raises(DuplicateId):
        reg.add_metadata(meta)


def test_duplicate_definition_rejected():
    reg = Registry()
    reg.register(_toy_def())
    with pytest.raises(DuplicateId):
        reg.register(_toy_def())


def test_frozen_registry_rejects_additions():
    reg = Registry().freeze()
    with pytest.raises(DuplicateId):
        reg.add_metadata(MalruleMeta(MalruleId("algebra", "toy_rule"), "desc"))
    with pytest.raises(DuplicateId):
        reg.register(_toy_def())


def test_register_rejects_empty_template_list():
    reg = Registry()
    definition = _toy_def()
    definition = MalruleDef(definition.meta, definition.correct, definition.malrule, [])
    with pytest.raises(ValidationFailed):
        reg.register(definition)


def test_register_rejects_template_for_other_malrule():
    template = _toy_template(malrule="algebra/somebody_else", statement="Compute {a}")
    with pytest.raises(ValidationFailed):
        Registry().register(_toy_def(template=template))


def test_register_rejects_duplicate_template_names():
    definition = _toy_def()
    doubled = MalruleDef(
        definition.meta,
        definition.correct,
        definition.malrule,
        [_toy_template(), _toy_template()],
    )
    with pytest.raises(ValidationFailed):
        Registry().register(doubled)


def test_register_rejects_template_name_missing_from_catalog():
    reg = Registry()
    meta = MalruleMeta(MalruleId("algebra", "toy_rule"), "desc")
    reg.add_metadata(meta, template_names=["listed_name"])
    with pytest.raises(ValidationFailed):
        reg.register(_toy_def())  # the def's template is named "default"


def test_register_rejects_bad_example_params():
    template = _toy_template(example_params={"a": 99})  # outside every band
    with pytest.raises(ValidationFailed):
        Registry().register(_toy_def(template=template))


def test_register_rejects_crashing_procedure():
    def broken(p, t):
        raise RuntimeError("boom")

    with pytest.raises(ValidationFailed):
        Registry().register(_toy_def(correct=broken))


def test_register_rejects_non_trace_return():
    with pytest.raises(ValidationFailed):
        Registry().register(_toy_def(malrule=lambda p, t: Rational(1)))
