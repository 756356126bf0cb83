"""How many usable instances a template can yield per grade band.

A parameter assignment counts when it satisfies the template constraint,
triggers the malrule, and the buggy answer does not grade equal to the
correct one. Closed forms and never_coincident claims are fast paths; the
ground truth is always full enumeration (use_fast_paths=False).
"""

from __future__ import annotations

import itertools

from .errors import MalruleNotTriggered
from .matching import DEFAULT_POLICY, answers_match


def _pair_for(registry, malrule, template, params):
    if template.answer_pair_fn is not None:
        return template.answer_pair_fn(params)
    correct = registry.solve_correct(malrule, params, template.name, validate=False)
    try:
        buggy = registry.apply_malrule(malrule, params, template.name, validate=False)
    except MalruleNotTriggered:
        return None
    return correct.answer, buggy.answer


def enumerate_capacity(
    registry,
    malrule,
    template_name,
    band,
    policy=DEFAULT_POLICY,
    use_fast_paths=True,
):
    """Count distinct usable parameter assignments for one template and band."""
    template = registry.get_template(malrule, template_name)
    if use_fast_paths and template.capacity_fn is not None:
        return template.capacity_fn(band)
    free = template.free_params()
    if use_fast_paths and template.constraint is None and template.never_coincident:
        total = 1
        for spec in free:
            total *= spec.range_for(band).size()
        return total

    names = [spec.name for spec in free]
    ranges = [spec.range_for(band) for spec in free]
    count = 0
    for combo in itertools.product(*(tuple(r.iter_all()) for r in ranges)):
        params = template.fill_derived(dict(zip(names, combo)))
        if template.constraint is not None and not template.constraint(params):
            continue
        if use_fast_paths and template.never_coincident:
            count += 1
            continue
        pair = _pair_for(registry, malrule, template, params)
        if pair is None:
            continue
        correct, buggy = pair
        if answers_match(buggy, correct, policy):
            continue
        count += 1
    return count


def capacity_report(registry, band, policy=DEFAULT_POLICY, malrules=None):
    """{malrule: {template: capacity}} over executable templates, in registry order."""
    keys = list(malrules) if malrules is not None else registry.executable_ids()
    report = {}
    for key in keys:
        report[key] = {
            t.name: enumerate_capacity(registry, key, t.name, band, policy)
            for t in registry.templates_for(key)
        }
    return report
