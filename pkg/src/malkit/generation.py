"""Templates, parameter ranges, and deterministic instance generation.

Every template defines ranges for all three grade bands. A draw derives an
independent RNG stream from (seed, malrule, template, draw_index); parameter
assignments that violate constraints, fail to trigger the malrule, or whose
buggy answer would grade as correct are rejected and resampled from the same
stream, up to REJECTION_BUDGET attempts.
"""

from __future__ import annotations

import hashlib
import json
import random
import string

from .answers import render as render_answer
from .answers import to_json
from .errors import ConstraintViolation, ExhaustedRejection, MalruleNotTriggered
from .matching import DEFAULT_POLICY, answers_match
from .values import FixedDecimal

BANDS = ("elementary", "middle", "early_high_school")
DEFAULT_BAND = "middle"
REJECTION_BUDGET = 1000

SCAFFOLDS = ("basic", "variant", "context", "word_problem")
CONTEXT_DOMAINS = (
    "abstract",
    "measurement",
    "money",
    "time_distance",
    "science",
    "sports",
    "food",
    "temperature",
    "sharing",
    "elevation",
)


def stream(seed, *parts):
    """Independent deterministic RNG for one draw."""
    key = "\x1f".join([str(seed)] + [str(p) for p in parts])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


class IntRange:
    """Integers lo..hi inclusive, stepped."""

    def __init__(self, lo, hi, step=1):
        if hi < lo or step < 1:
            raise ValueError("empty integer range")
        self.lo = lo
        self.hi = hi
        self.step = step

    def size(self):
        return (self.hi - self.lo) // self.step + 1

    def at(self, index):
        return self.lo + index * self.step

    def iter_all(self):
        return (self.at(i) for i in range(self.size()))

    def sample(self, rng):
        return self.at(rng.randrange(self.size()))

    def contains(self, value):
        return (
            isinstance(value, int)
            and self.lo <= value <= self.hi
            and (value - self.lo) % self.step == 0
        )


class DecimalRange:
    """FixedDecimal grid from lo to hi at one scale; trailing zeros included."""

    def __init__(self, lo, hi, scale):
        lo = FixedDecimal.from_string(lo) if isinstance(lo, str) else lo
        hi = FixedDecimal.from_string(hi) if isinstance(hi, str) else hi
        self.scale = scale
        self._lo = self._mantissa(lo)
        self._hi = self._mantissa(hi)
        if self._hi < self._lo:
            raise ValueError("empty decimal range")

    def _mantissa(self, dec):
        if dec.scale > self.scale:
            raise ValueError("range bound finer than the range scale")
        return dec.mantissa * 10 ** (self.scale - dec.scale)

    def size(self):
        return self._hi - self._lo + 1

    def at(self, index):
        return FixedDecimal(self._lo + index, self.scale)

    def iter_all(self):
        return (self.at(i) for i in range(self.size()))

    def sample(self, rng):
        return self.at(rng.randrange(self.size()))

    def contains(self, value):
        return (
            isinstance(value, FixedDecimal)
            and value.scale == self.scale
            and self._lo <= value.mantissa <= self._hi
        )


class MultiScaleRange:
    """Union of DecimalRange grids, one per scale.

    0.5 (one place) and 0.50 (two places) are distinct literals here; malrules
    that read digit-string length need both. Each grid carries its own bounds,
    so 0.1-0.9 at one place can sit alongside 0.10-0.99 at two.
    """

    def __init__(self, *grids):
        if not grids:
            raise ValueError("empty multi-scale range")
        self.grids = tuple(grids)

    def size(self):
        return sum(g.size() for g in self.grids)

    def at(self, index):
        for g in self.grids:
            if index < g.size():
                return g.at(index)
            index -= g.size()
        raise IndexError(index)

    def iter_all(self):
        for g in self.grids:
            yield from g.iter_all()

    def sample(self, rng):
        return self.at(rng.randrange(self.size()))

    def contains(self, value):
        return any(g.contains(value) for g in self.grids)


class TokenRange:
    """A finite set of string tokens."""

    def __init__(self, *choices):
        if not choices:
            raise ValueError("empty token range")
        self.choices = tuple(choices)

    def size(self):
        return len(self.choices)

    def at(self, index):
        return self.choices[index]

    def iter_all(self):
        return iter(self.choices)

    def sample(self, rng):
        return self.choices[rng.randrange(len(self.choices))]

    def contains(self, value):
        return value in self.choices


class LiteralRange:
    """An explicit list of values (ints or FixedDecimals)."""

    def __init__(self, values):
        self.values = tuple(values)
        if not self.values:
            raise ValueError("empty literal range")

    def size(self):
        return len(self.values)

    def at(self, index):
        return self.values[index]

    def iter_all(self):
        return iter(self.values)

    def sample(self, rng):
        return self.values[rng.randrange(len(self.values))]

    def contains(self, value):
        return value in self.values


class ParamSpec:
    """One template parameter: per-band ranges, or a value derived from earlier params."""

    def __init__(self, name, bands=None, derive=None):
        self.name = name
        self.derive = derive
        if derive is not None:
            self.bands = None
            return
        if bands is None:
            raise ValueError(f"parameter {name} needs ranges or a derivation")
        if not isinstance(bands, dict):
            bands = {b: bands for b in BANDS}
        missing = set(BANDS) - set(bands)
        if missing:
            raise ValueError(f"parameter {name} lacks bands: {sorted(missing)}")
        self.bands = bands

    def range_for(self, band):
        if band not in self.bands:
            raise ValueError(f"unknown grade band {band!r}")
        return self.bands[band]


class Template:
    def __init__(
        self,
        malrule,
        name,
        scaffold,
        context_domain,
        params,
        statement,
        example_params,
        constraint=None,
        capacity_fn=None,
        answer_pair_fn=None,
        never_coincident=False,
    ):
        if scaffold not in SCAFFOLDS:
            raise ValueError(f"unknown scaffold {scaffold!r}")
        if context_domain not in CONTEXT_DOMAINS:
            raise ValueError(f"unknown context domain {context_domain!r}")
        self.malrule = malrule  # "category/name"
        self.name = name
        self.scaffold = scaffold
        self.context_domain = context_domain
        self.params = tuple(params)
        self.statement = statement
        self.example_params = dict(example_params)
        self.constraint = constraint
        self.capacity_fn = capacity_fn
        self.answer_pair_fn = answer_pair_fn
        # Claim, checked against enumeration in tests: no in-range draw can
        # make the buggy answer grade equal to the correct one.
        self.never_coincident = never_coincident
        declared = {p.name for p in self.params}
        placeholders = {
            field for _, field, _, _ in string.Formatter().parse(statement) if field
        }
        extra = placeholders - declared
        if extra:
            raise ValueError(f"statement placeholders missing from the schema: {sorted(extra)}")

    @property
    def id(self):
        return f"{self.malrule}/{self.name}"

    def free_params(self):
        return [p for p in self.params if p.derive is None]

    def fill_derived(self, params):
        """Complete an assignment by computing derived parameters in order."""
        out = dict(params)
        for spec in self.params:
            if spec.derive is not None:
                out[spec.name] = spec.derive(out)
        return out


def render_value(value):
    if isinstance(value, FixedDecimal):
        return str(value)
    if isinstance(value, (int, str)):
        return str(value)
    return render_answer(value)


def render_statement(template, params):
    values = {}
    for spec in template.params:
        if spec.name not in params:
            raise ConstraintViolation(f"missing parameter {spec.name!r}")
        values[spec.name] = render_value(params[spec.name])
    return template.statement.format(**values)


def check_constraints(template, params):
    """True iff every parameter is in range (any band) and the trigger predicate holds."""
    for spec in template.params:
        if spec.name not in params:
            return False
        value = params[spec.name]
        if spec.derive is not None:
            derived = spec.derive({k: v for k, v in params.items()})
            if render_value(derived) != render_value(value):
                return False
            continue
        if not any(spec.bands[b].contains(value) for b in BANDS):
            return False
    if template.constraint is not None and not template.constraint(params):
        return False
    return True


def draw_params(template, rng, band):
    params = {}
    for spec in template.params:
        if spec.derive is not None:
            params[spec.name] = spec.derive(params)
        else:
            params[spec.name] = spec.range_for(band).sample(rng)
    return params


class ProblemInstance:
    __slots__ = (
        "instance_id",
        "malrule",
        "template",
        "scaffold",
        "context_domain",
        "statement",
        "params",
        "grade_band",
        "seed",
        "draw_index",
        "correct",
        "buggy",
    )

    def __init__(self, **kw):
        for field in self.__slots__:
            setattr(self, field, kw[field])

    @property
    def correct_answer(self):
        return self.correct.answer

    @property
    def malrule_answer(self):
        return self.buggy.answer

    def to_record(self):
        return {
            "instance_id": self.instance_id,
            "malrule": self.malrule,
            "template": self.template,
            "scaffold": self.scaffold,
            "context_domain": self.context_domain,
            "statement": self.statement,
            "params": {k: render_value(v) for k, v in self.params.items()},
            "correct_answer": to_json(self.correct.answer),
            "malrule_answer": to_json(self.buggy.answer),
            "correct_steps": self.correct.step_texts(),
            "malrule_steps": self.buggy.step_texts(),
            "grade_band": self.grade_band,
            "seed": self.seed,
            "draw_index": self.draw_index,
        }


def instance_id_for(malrule, template_name, params, statement):
    payload = json.dumps(
        {
            "malrule": malrule,
            "template": template_name,
            "params": {k: render_value(v) for k, v in sorted(params.items())},
            "statement": statement,
        },
        ensure_ascii=False,
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def instantiate(registry, malrule, template_name, seed, draw_index, grade_band=DEFAULT_BAND, policy=DEFAULT_POLICY):
    """Draw one constraint-satisfying, non-coincident instance deterministically."""
    template = registry.get_template(malrule, template_name)
    rng = stream(seed, malrule, template_name, draw_index)
    for _ in range(REJECTION_BUDGET):
        params = draw_params(template, rng, grade_band)
        if template.constraint is not None and not template.constraint(params):
            continue
        # Ranges were respected by construction; skip re-validation in the hot loop.
        correct = registry.solve_correct(malrule, params, template_name, validate=False)
        try:
            buggy = registry.apply_malrule(malrule, params, template_name, validate=False)
        except MalruleNotTriggered:
            continue
        if answers_match(buggy.answer, correct.answer, policy):
            continue  # a grader could not tell the buggy answer from the correct one
        statement = render_statement(template, params)
        return ProblemInstance(
            instance_id=instance_id_for(malrule, template_name, params, statement),
            malrule=malrule,
            template=template_name,
            scaffold=template.scaffold,
            context_domain=template.context_domain,
            statement=statement,
            params=params,
            grade_band=grade_band,
            seed=seed,
            draw_index=draw_index,
            correct=correct,
            buggy=buggy,
        )
    raise ExhaustedRejection(
        f"{malrule}/{template_name}: no usable draw within {REJECTION_BUDGET} attempts"
    )
