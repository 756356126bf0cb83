"""Malrule identities, metadata, and the executable registry.

Each malrule belongs to one of 22 fine categories; categories roll up into
ten NCTM content categories and four strands. Registration self-validates by
running both procedures on every template's example parameters.
"""

from __future__ import annotations

from .errors import (
    ConstraintViolation,
    DuplicateId,
    MalruleNotTriggered,
    UnknownId,
    UnknownTemplate,
    ValidationFailed,
)
from .generation import check_constraints
from .trace import Trace

NCTM_CATEGORIES = {
    "whole_number_ops": "Whole Number Ops",
    "fractions_ratios": "Fractions & Ratios",
    "decimals_percents": "Decimals & Percents",
    "signed_numbers": "Signed Numbers",
    "exponents_radicals": "Exponents & Radicals",
    "expressions_equations": "Expressions & Equations",
    "functions": "Functions",
    "geometry": "Geometry",
    "coordinate_geometry": "Coordinate Geometry",
    "data_word_problems": "Data & Word Problems",
}

CATEGORY_TO_NCTM = {
    "subtraction": "whole_number_ops",
    "multiplication_division": "whole_number_ops",
    "fractions": "fractions_ratios",
    "ratios_proportions": "fractions_ratios",
    "decimals": "decimals_percents",
    "percentages": "decimals_percents",
    "rounding": "decimals_percents",
    "scientific_notation": "decimals_percents",
    "negative_numbers": "signed_numbers",
    "absolute_value": "signed_numbers",
    "exponents": "exponents_radicals",
    "radicals": "exponents_radicals",
    "algebra": "expressions_equations",
    "factoring": "expressions_equations",
    "linear_equations": "expressions_equations",
    "order_of_operations": "expressions_equations",
    "functions": "functions",
    "geometry": "geometry",
    "measurement": "geometry",
    "graphing": "coordinate_geometry",
    "statistics": "data_word_problems",
    "word_problems": "data_word_problems",
}

NCTM_TO_STRAND = {
    "whole_number_ops": "number_operations",
    "fractions_ratios": "number_operations",
    "decimals_percents": "number_operations",
    "signed_numbers": "number_operations",
    "exponents_radicals": "algebra",
    "expressions_equations": "algebra",
    "functions": "algebra",
    "geometry": "geometry_measurement",
    "coordinate_geometry": "geometry_measurement",
    "data_word_problems": "data_modeling",
}

STRANDS = {
    "number_operations": "Number & Operations",
    "algebra": "Algebra",
    "geometry_measurement": "Geometry & Measurement",
    "data_modeling": "Data Analysis & Modeling",
}


class MalruleId:
    __slots__ = ("category", "name")

    def __init__(self, category, name):
        if category not in CATEGORY_TO_NCTM:
            raise ValueError(f"unknown category {category!r}")
        self.category = category
        self.name = name

    @classmethod
    def parse(cls, text):
        category, _, name = text.partition("/")
        if not name:
            raise ValueError(f"malrule ids look like category/name, got {text!r}")
        return cls(category, name)

    def __str__(self):
        return f"{self.category}/{self.name}"

    def __eq__(self, other):
        if not isinstance(other, MalruleId):
            return NotImplemented
        return self.category == other.category and self.name == other.name

    def __hash__(self):
        return hash((self.category, self.name))

    def __repr__(self):
        return f"MalruleId({self.category!r}, {self.name!r})"


class MalruleMeta:
    __slots__ = ("id", "description", "sources", "fmra", "developmental_stage")

    def __init__(self, id, description, sources=(), fmra=None, developmental_stage=None):
        self.id = id
        self.description = description
        self.sources = tuple(sources)
        self.fmra = fmra
        self.developmental_stage = developmental_stage

    @property
    def nctm_category(self):
        return CATEGORY_TO_NCTM[self.id.category]

    @property
    def strand(self):
        return NCTM_TO_STRAND[self.nctm_category]

    def fmra_description(self):
        return self.fmra if self.fmra is not None else self.description


class MalruleDef:
    """An executable malrule: metadata, paired procedures, and templates.

    correct and malrule are callables (params, template) -> Trace.
    """

    __slots__ = ("meta", "correct", "malrule", "templates")

    def __init__(self, meta, correct, malrule, templates):
        self.meta = meta
        self.correct = correct
        self.malrule = malrule
        self.templates = tuple(templates)


class Registry:
    def __init__(self):
        self._meta = {}
        self._catalog_templates = {}
        self._defs = {}
        self._templates = {}
        self._order = []
        self._frozen = False

    def add_metadata(self, meta, template_names=()):
        key = str(meta.id)
        if self._frozen:
            raise DuplicateId("registry is frozen")
        if key in self._meta:
            raise DuplicateId(key)
        self._meta[key] = meta
        self._catalog_templates[key] = tuple(template_names)
        self._order.append(key)

    def register(self, definition):
        if self._frozen:
            raise DuplicateId("registry is frozen")
        key = str(definition.meta.id)
        if key in self._defs:
            raise DuplicateId(key)
        if key not in self._meta:
            self.add_metadata(definition.meta, [t.name for t in definition.templates])
        self._validate(definition)
        self._defs[key] = definition
        for template in definition.templates:
            self._templates[(key, template.name)] = template
        return definition.meta.id

    def _validate(self, definition):
        key = str(definition.meta.id)
        if not definition.templates:
            raise ValidationFailed(key, "no templates")
        seen = set()
        known = self._catalog_templates.get(key)
        for template in definition.templates:
            tid = template.id
            if template.malrule != key:
                raise ValidationFailed(tid, f"template belongs to {template.malrule}")
            if template.name in seen:
                raise ValidationFailed(tid, "duplicate template name")
            seen.add(template.name)
            if known and template.name not in known:
                raise ValidationFailed(tid, "template name not in the catalog for this malrule")
            example = template.fill_derived(template.example_params)
            if not check_constraints(template, example):
                raise ValidationFailed(tid, "example parameters violate constraints")
            for proc, label in ((definition.correct, "correct"), (definition.malrule, "malrule")):
                try:
                    trace = proc(example, template)
                except Exception as exc:
                    raise ValidationFailed(tid, f"{label} procedure failed on the example: {exc}")
                if not isinstance(trace, Trace):
                    raise ValidationFailed(tid, f"{label} procedure did not return a Trace")

    def freeze(self):
        self._frozen = True
        return self

    # Lookups

    def _require_meta(self, malrule):
        key = str(malrule)
        if key not in self._meta:
            raise UnknownId(key)
        return self._meta[key]

    def _require_def(self, malrule):
        key = str(malrule)
        if key not in self._defs:
            raise UnknownId(f"{key} has no executable definition")
        return self._defs[key]

    def get_meta(self, malrule):
        return self._require_meta(malrule)

    def get_template(self, malrule, template_name):
        key = (str(malrule), template_name)
        if key not in self._templates:
            self._require_def(malrule)
            raise UnknownTemplate(f"{key[0]}/{template_name}")
        return self._templates[key]

    def malrule_ids(self):
        """All catalog ids, executable or not, in catalog order."""
        return list(self._order)

    def executable_ids(self):
        return [key for key in self._order if key in self._defs]

    def catalog_template_names(self, malrule):
        self._require_meta(malrule)
        return list(self._catalog_templates.get(str(malrule), ()))

    def templates_for(self, malrule):
        definition = self._require_def(malrule)
        return list(definition.templates)

    def fmra_description(self, malrule):
        return self._require_meta(malrule).fmra_description()

    # Procedures

    def _run(self, malrule, params, template_name, which, validate=True):
        definition = self._require_def(malrule)
        template = self.get_template(malrule, template_name)
        params = template.fill_derived(params)
        if validate and not check_constraints(template, params):
            raise ConstraintViolation(f"{template.id}: parameters violate constraints")
        proc = definition.correct if which == "correct" else definition.malrule
        return proc(params, template)

    def solve_correct(self, malrule, params, template_name, validate=True):
        return self._run(malrule, params, template_name, "correct", validate)

    def apply_malrule(self, malrule, params, template_name, validate=True):
        return self._run(malrule, params, template_name, "malrule", validate)
