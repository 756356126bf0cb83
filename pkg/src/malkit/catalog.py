"""The bundled malrule catalog and the standard registry built from it.

catalog.jsonl carries every documented malrule: category, name, description,
literature sources, and template names. A small subset also has executable
procedures (the seed set); build_registry() loads the full catalog and then
registers those.
"""

from __future__ import annotations

import json
from importlib import resources

from . import rules
from .registry import MalruleId, MalruleMeta, Registry

_DATA = "data/catalog.jsonl"


def iter_catalog_records():
    """Catalog records as dicts, in file order."""
    path = resources.files("malkit").joinpath(_DATA)
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def load_catalog(registry=None):
    """Register metadata for every cataloged malrule."""
    registry = registry if registry is not None else Registry()
    for rec in iter_catalog_records():
        meta = MalruleMeta(
            MalruleId(rec["category"], rec["name"]),
            rec["description"],
            sources=tuple(rec.get("sources", ())),
            fmra=rec.get("fmra"),
        )
        registry.add_metadata(meta, rec.get("templates", ()))
    return registry


def build_registry():
    """The standard registry: full catalog plus the executable seed set."""
    registry = load_catalog()
    for module in rules.SEED_MODULES:
        registry.register(module.build(registry.get_meta(module.MALRULE)))
    return registry.freeze()
