"""Datasets and evaluation pairs.

A benchmark build fixes one dataset (per_template instances for every
executable template), then samples ordered (source, target) instance pairs
from it: same-template pairs per (malrule, template) group and cross-template
pairs per malrule. Every sampled pair is later expanded into one row per
prompt condition (answer_only, with_steps). All sampling is deterministic in
the seed; pair streams are independent of each other and of instance draws.
"""

from __future__ import annotations

import hashlib
import json

from .errors import ExhaustedRejection
from .generation import DEFAULT_BAND, instantiate, stream
from .matching import DEFAULT_POLICY

SAME_TEMPLATE = "same_template"
CROSS_TEMPLATE = "cross_template"
TEMPLATE_CONDITIONS = (SAME_TEMPLATE, CROSS_TEMPLATE)

ANSWER_ONLY = "answer_only"
WITH_STEPS = "with_steps"
PROMPT_CONDITIONS = (ANSWER_ONLY, WITH_STEPS)

DEFAULT_PER_TEMPLATE = 10
DEFAULT_SAME_PAIRS_PER_GROUP = 10
DEFAULT_CROSS_PAIRS_PER_MALRULE = 100


class Dataset:
    """Instances grouped by (malrule, template), in registry order."""

    def __init__(self, seed, grade_band, per_template):
        self.seed = seed
        self.grade_band = grade_band
        self.per_template = per_template
        self.instances = []
        self.groups = {}  # (malrule, template) -> [ProblemInstance]
        self.by_id = {}
        self.shortfalls = {}  # (malrule, template) -> count actually produced

    def add(self, instance):
        key = (instance.malrule, instance.template)
        self.groups.setdefault(key, []).append(instance)
        self.instances.append(instance)
        self.by_id[instance.instance_id] = instance

    def templates_of(self, malrule):
        return [t for (m, t) in self.groups if m == malrule]

    def malrules(self):
        seen = []
        for m, _ in self.groups:
            if m not in seen:
                seen.append(m)
        return seen


def sample_instances(
    registry,
    per_template=DEFAULT_PER_TEMPLATE,
    seed=0,
    grade_band=DEFAULT_BAND,
    policy=DEFAULT_POLICY,
):
    """Draw per_template distinct instances for every executable template.

    Successive draw indexes feed the rejection sampler; repeated parameter
    draws dedupe on instance_id. A template that cannot fill its quota is
    recorded in dataset.shortfalls rather than failing the build.
    """
    if per_template < 1:
        raise ValueError("per_template must be at least 1")
    dataset = Dataset(seed, grade_band, per_template)
    attempt_cap = per_template * 20
    for malrule in registry.executable_ids():
        for template in registry.templates_for(malrule):
            got = 0
            for draw_index in range(attempt_cap):
                if got == per_template:
                    break
                try:
                    inst = instantiate(
                        registry,
                        malrule,
                        template.name,
                        seed,
                        draw_index,
                        grade_band=grade_band,
                        policy=policy,
                    )
                except ExhaustedRejection:
                    break  # the template is effectively dry for this band
                if inst.instance_id in dataset.by_id:
                    continue
                dataset.add(inst)
                got += 1
            if got < per_template:
                dataset.shortfalls[(malrule, template.name)] = got
    return dataset


class EvalPair:
    """An ordered (source, target) pair of instances of one malrule.

    prompt_condition is None while the pair is a raw sample; the benchmark
    file holds only expanded pairs, one per prompt condition.
    """

    __slots__ = ("malrule", "source", "target", "template_condition", "prompt_condition")

    def __init__(self, source, target, template_condition, prompt_condition=None):
        if source.malrule != target.malrule:
            raise ValueError("paired instances must share a malrule")
        if source.instance_id == target.instance_id:
            raise ValueError("a pair needs two distinct instances")
        if template_condition == SAME_TEMPLATE:
            if source.template != target.template:
                raise ValueError("same_template pair spans two templates")
        elif template_condition == CROSS_TEMPLATE:
            if source.template == target.template:
                raise ValueError("cross_template pair stays inside one template")
        else:
            raise ValueError(f"unknown template condition {template_condition!r}")
        if prompt_condition is not None and prompt_condition not in PROMPT_CONDITIONS:
            raise ValueError(f"unknown prompt condition {prompt_condition!r}")
        self.malrule = source.malrule
        self.source = source
        self.target = target
        self.template_condition = template_condition
        self.prompt_condition = prompt_condition

    @property
    def pair_id(self):
        payload = json.dumps(
            {
                "malrule": self.malrule,
                "source_instance_id": self.source.instance_id,
                "target_instance_id": self.target.instance_id,
                "template_condition": self.template_condition,
                "prompt_condition": self.prompt_condition,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def with_condition(self, prompt_condition):
        return EvalPair(self.source, self.target, self.template_condition, prompt_condition)

    def to_record(self):
        return {
            "pair_id": self.pair_id,
            "malrule": self.malrule,
            "source_instance_id": self.source.instance_id,
            "target_instance_id": self.target.instance_id,
            "template_condition": self.template_condition,
            "prompt_condition": self.prompt_condition,
        }


def sample_same_template_pairs(dataset, pairs_per_group=DEFAULT_SAME_PAIRS_PER_GROUP, seed=None):
    """Ordered within-template pairs, pairs_per_group per (malrule, template).

    The universe for a group of n instances is the n(n-1) ordered pairs;
    sampling is without replacement, so a small group yields what it has.
    """
    if pairs_per_group < 0:
        raise ValueError("pairs_per_group must not be negative")
    if seed is None:
        seed = dataset.seed
    pairs = []
    for (malrule, template), group in dataset.groups.items():
        n = len(group)
        universe = n * (n - 1)
        if universe == 0:
            continue
        rng = stream(seed, "pairs/same", malrule, template)
        for idx in rng.sample(range(universe), min(pairs_per_group, universe)):
            i, off = divmod(idx, n - 1)
            j = off if off < i else off + 1
            pairs.append(EvalPair(group[i], group[j], SAME_TEMPLATE))
    return pairs


def sample_cross_template_pairs(
    dataset, pairs_per_malrule=DEFAULT_CROSS_PAIRS_PER_MALRULE, seed=None
):
    """Ordered across-template pairs, pairs_per_malrule per multi-template malrule.

    The universe is the union of blocks, one block per ordered template pair
    (t1, t2) with t1 != t2, holding |t1| x |t2| instance pairs. A malrule with
    a single template has no cross pairs and is skipped.
    """
    if pairs_per_malrule < 0:
        raise ValueError("pairs_per_malrule must not be negative")
    if seed is None:
        seed = dataset.seed
    pairs = []
    for malrule in dataset.malrules():
        templates = dataset.templates_of(malrule)
        if len(templates) < 2:
            continue
        blocks = []  # (source group, target group) per ordered template pair
        for t1 in templates:
            for t2 in templates:
                if t1 != t2:
                    blocks.append((dataset.groups[(malrule, t1)], dataset.groups[(malrule, t2)]))
        sizes = [len(a) * len(b) for a, b in blocks]
        universe = sum(sizes)
        if universe == 0:
            continue
        rng = stream(seed, "pairs/cross", malrule)
        for idx in rng.sample(range(universe), min(pairs_per_malrule, universe)):
            for (src_group, tgt_group), size in zip(blocks, sizes):
                if idx < size:
                    i, j = divmod(idx, len(tgt_group))
                    pairs.append(EvalPair(src_group[i], tgt_group[j], CROSS_TEMPLATE))
                    break
                idx -= size
    return pairs


def expand_prompt_conditions(pairs):
    """Two benchmark rows per sampled pair, one per prompt condition."""
    return [pair.with_condition(c) for pair in pairs for c in PROMPT_CONDITIONS]
