"""Command-line pipeline: list, generate, pairs, prompts, eval, report, capacity.

Every stage writes one JSON Lines (or JSON) artifact plus a sidecar manifest
recording the effective config and the sha256 of each input. Downstream
stages re-derive their upstream datasets from the recorded config and refuse
to run when a file does not hash to what its manifest promises, so artifacts
from different runs cannot be silently mixed. Reruns with the same config
and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .capacity import capacity_report, enumerate_capacity
from .catalog import build_registry
from .client import ModelClient, ModelProfile, load_profiles
from .errors import LineageError, MalkitError, UnknownId
from .generation import BANDS, DEFAULT_BAND
from .grading import grade
from .manifest import file_sha256, read_manifest, verify_artifact, verify_inputs, write_manifest
from .metrics import compute_metrics
from .prompts import TASKS, build_prompts
from .registry import CATEGORY_TO_NCTM, NCTM_TO_STRAND, STRANDS
from .sampling import (
    DEFAULT_CROSS_PAIRS_PER_MALRULE,
    DEFAULT_PER_TEMPLATE,
    DEFAULT_SAME_PAIRS_PER_GROUP,
    expand_prompt_conditions,
    sample_cross_template_pairs,
    sample_instances,
    sample_same_template_pairs,
)

INSTANCES_FILE = "instances.jsonl"
PAIRS_FILE = "pairs.jsonl"
PROMPTS_FILE = "prompts.jsonl"
RECORDS_FILE = "records.jsonl"
REPORT_FILE = "report.json"
CAPACITY_FILE = "capacity.json"


def _dumps(record):
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


def _jsonl_bytes(records):
    return "".join(_dumps(r) + "\n" for r in records).encode("utf-8")


def _write_bytes(path, data):
    with open(path, "wb") as fh:
        fh.write(data)


def _read_jsonl(path):
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise MalkitError(f"{Path(path).name}:{lineno}: not valid JSON ({exc.msg})")
    return records


def _load_config(path):
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise MalkitError("the config file must hold a JSON object")
    return config


class RunConfig:
    """Effective settings for one run: CLI flags over config file over defaults."""

    def __init__(self, args):
        self.file = _load_config(getattr(args, "config", None))
        self.seed = self._pick(args, "seed", 0)
        self.grade_band = self._pick(args, "grade_band", DEFAULT_BAND)
        if self.grade_band not in BANDS:
            raise MalkitError(f"unknown grade band {self.grade_band!r}")
        self.run_name = self.file.get("run_name", f"seed{self.seed}")
        out_dir = self._pick(args, "out_dir", None)
        self.out_dir = Path(out_dir) if out_dir else Path("out") / self.run_name
        self.per_template = self._pick(args, "per_template", DEFAULT_PER_TEMPLATE)
        self.same_pairs_per_group = self._pick(
            args, "same_pairs_per_group", DEFAULT_SAME_PAIRS_PER_GROUP
        )
        self.cross_pairs_per_malrule = self._pick(
            args, "cross_pairs_per_malrule", DEFAULT_CROSS_PAIRS_PER_MALRULE
        )
        self.tasks = self._tasks(self._pick(args, "tasks", "cra,mra,fmra"))
        self.steps = self._pick(args, "steps", "both")
        self.model = self._pick(args, "model", None)
        self.max_in_flight = self._pick(args, "max_in_flight", 8)

    def _pick(self, args, name, default):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in self.file:
            return self.file[name]
        return default

    @staticmethod
    def _tasks(spec):
        if isinstance(spec, str):
            names = [t.strip() for t in spec.split(",") if t.strip()]
        else:
            names = list(spec)
        for name in names:
            if name not in TASKS:
                raise MalkitError(f"unknown task {name!r}")
        return tuple(t for t in TASKS if t in names)

    def path(self, name):
        return self.out_dir / name

    def profile(self, name):
        profiles = self.file.get("profiles", {})
        if name not in profiles:
            raise UnknownId(f"model profile {name!r} is not defined in the config file")
        entry = dict(profiles[name])
        family = entry.pop("family", None)
        model = entry.pop("model", name)
        endpoint = entry.pop("endpoint")
        if family is not None:
            return ModelProfile.from_family(model, endpoint, family, **entry)
        return ModelProfile(model, endpoint, **entry)


# Stage configs, as recorded in manifests and replayed by downstream stages.
# A downstream stage copies the upstream fields from the upstream manifest,
# never from its own flags, so the recorded config always matches the bytes.


def _build_dataset(registry, stage_config):
    return sample_instances(
        registry,
        per_template=stage_config["per_template"],
        seed=stage_config["seed"],
        grade_band=stage_config["grade_band"],
    )


def _build_pairs(dataset, stage_config):
    same = sample_same_template_pairs(dataset, stage_config["same_pairs_per_group"])
    cross = sample_cross_template_pairs(dataset, stage_config["cross_pairs_per_malrule"])
    return expand_prompt_conditions(same + cross)


def _replay_dataset(registry, instances_path):
    """The live dataset whose serialization is exactly the instances file."""
    manifest = verify_artifact(instances_path)
    dataset = _build_dataset(registry, manifest["config"])
    rebuilt = _jsonl_bytes(i.to_record() for i in dataset.instances)
    if file_sha256(instances_path) != _bytes_sha256(rebuilt):
        raise LineageError(
            f"{Path(instances_path).name} was not generated by this tool version "
            "with its recorded config"
        )
    return dataset, manifest


def _replay_pairs(dataset, pairs_path):
    manifest = verify_artifact(pairs_path)
    pairs = _build_pairs(dataset, manifest["config"])
    rebuilt = _jsonl_bytes(p.to_record() for p in pairs)
    if file_sha256(pairs_path) != _bytes_sha256(rebuilt):
        raise LineageError(
            f"{Path(pairs_path).name} was not generated by this tool version "
            "with its recorded config"
        )
    return pairs, manifest


def _bytes_sha256(data):
    return hashlib.sha256(data).hexdigest()


def _verify_chain(artifact_path):
    """Verify an artifact, its inputs, and every manifest reachable from them."""
    artifact_path = Path(artifact_path)
    manifest = verify_artifact(artifact_path)
    verify_inputs(manifest, artifact_path.parent)
    for entry in manifest["inputs"].values():
        _verify_chain(artifact_path.parent / entry["path"])
    return manifest


# Commands.


def cmd_list(cfg):
    registry = build_registry()
    executable = set(registry.executable_ids())
    by_strand = {strand: [] for strand in STRANDS}
    for malrule in registry.malrule_ids():
        category = malrule.split("/", 1)[0]
        by_strand[NCTM_TO_STRAND[CATEGORY_TO_NCTM[category]]].append(malrule)
    total_templates = 0
    for strand in STRANDS:
        malrules = by_strand[strand]
        templates = sum(len(registry.catalog_template_names(m)) for m in malrules)
        total_templates += templates
        print(f"{STRANDS[strand]} ({len(malrules)} malrules, {templates} templates)")
        for malrule in malrules:
            n = len(registry.catalog_template_names(malrule))
            status = "executable" if malrule in executable else "metadata-only"
            print(f"  {malrule:<60} {status:<14} {n} templates")
    print(
        f"total: {len(registry.malrule_ids())} malrules "
        f"({len(executable)} executable), {total_templates} templates"
    )
    return 0


def cmd_generate(cfg):
    registry = build_registry()
    stage_config = {
        "command": "generate",
        "seed": cfg.seed,
        "grade_band": cfg.grade_band,
        "per_template": cfg.per_template,
    }
    dataset = _build_dataset(registry, stage_config)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.path(INSTANCES_FILE)
    _write_bytes(path, _jsonl_bytes(i.to_record() for i in dataset.instances))
    write_manifest(path, stage_config)
    for (malrule, template), got in dataset.shortfalls.items():
        print(
            f"warning: {malrule}/{template} yielded {got} of "
            f"{cfg.per_template} instances",
            file=sys.stderr,
        )
    print(f"wrote {len(dataset.instances)} instances to {path}")
    return 0


def cmd_pairs(cfg):
    registry = build_registry()
    instances_path = cfg.path(INSTANCES_FILE)
    dataset, instances_manifest = _replay_dataset(registry, instances_path)
    stage_config = {
        **instances_manifest["config"],
        "command": "pairs",
        "same_pairs_per_group": cfg.same_pairs_per_group,
        "cross_pairs_per_malrule": cfg.cross_pairs_per_malrule,
    }
    pairs = _build_pairs(dataset, stage_config)
    path = cfg.path(PAIRS_FILE)
    _write_bytes(path, _jsonl_bytes(p.to_record() for p in pairs))
    write_manifest(path, stage_config, inputs={"instances": instances_path})
    print(f"wrote {len(pairs)} pair rows to {path}")
    return 0


def cmd_prompts(cfg):
    registry = build_registry()
    instances_path = cfg.path(INSTANCES_FILE)
    pairs_path = cfg.path(PAIRS_FILE)
    dataset, _ = _replay_dataset(registry, instances_path)
    pairs, pairs_manifest = _replay_pairs(dataset, pairs_path)
    verify_inputs(pairs_manifest, cfg.out_dir)
    stage_config = {
        **pairs_manifest["config"],
        "command": "prompts",
        "tasks": list(cfg.tasks),
        "steps": cfg.steps,
    }
    prompts = build_prompts(registry, dataset, pairs, tasks=cfg.tasks, steps=cfg.steps)
    path = cfg.path(PROMPTS_FILE)
    _write_bytes(path, _jsonl_bytes(p.to_record() for p in prompts))
    write_manifest(
        path,
        stage_config,
        inputs={"instances": instances_path, "pairs": pairs_path},
    )
    print(f"wrote {len(prompts)} prompts to {path}")
    return 0


def cmd_eval(cfg):
    if cfg.model is None:
        raise MalkitError("eval needs --model (or a model entry in the config file)")
    prompts_path = cfg.path(PROMPTS_FILE)
    verify_artifact(prompts_path)
    prompt_records = _read_jsonl(prompts_path)
    profile = cfg.profile(cfg.model)
    client = ModelClient(profile)
    responses = client.run_batch(
        [rec["messages"] for rec in prompt_records], max_in_flight=cfg.max_in_flight
    )
    records = [
        grade(rec, text, profile.model).to_record()
        for rec, text in zip(prompt_records, responses)
    ]
    stage_config = {
        "command": "eval",
        "model": cfg.model,
        "temperature": profile.temperature,
        "top_p": profile.top_p,
        "top_k": profile.top_k,
        "max_tokens": profile.max_tokens,
    }
    path = cfg.path(RECORDS_FILE)
    _write_bytes(path, _jsonl_bytes(records))
    write_manifest(path, stage_config, inputs={"prompts": prompts_path})
    print(f"wrote {len(records)} graded records to {path}")
    return 0


def cmd_report(cfg):
    records_path = cfg.path(RECORDS_FILE)
    _verify_chain(records_path)
    raw = _read_jsonl(records_path)
    required = {"prompt_id", "task", "conditions", "model", "matched", "unparseable", "meta"}
    for index, rec in enumerate(raw, start=1):
        missing = required - set(rec)
        if missing:
            raise MalkitError(
                f"{RECORDS_FILE}:{index}: record lacks {sorted(missing)}"
            )
    report = compute_metrics(raw)
    path = cfg.path(REPORT_FILE)
    data = json.dumps(report.to_json(), ensure_ascii=False, indent=2, sort_keys=True)
    _write_bytes(path, (data + "\n").encode("utf-8"))
    write_manifest(path, {"command": "report"}, inputs={"records": records_path})
    print(report.render_text())
    print(f"wrote {path}")
    return 0


def cmd_capacity(cfg, malrules=None, fast_paths=True):
    registry = build_registry()
    if malrules:
        for malrule in malrules:
            if malrule not in set(registry.executable_ids()):
                raise UnknownId(f"no executable malrule {malrule!r}")
    if fast_paths:
        table = capacity_report(registry, cfg.grade_band, malrules=malrules)
    else:
        keys = list(malrules) if malrules else registry.executable_ids()
        table = {
            key: {
                t.name: enumerate_capacity(
                    registry, key, t.name, cfg.grade_band, use_fast_paths=False
                )
                for t in registry.templates_for(key)
            }
            for key in keys
        }
    total = sum(n for per in table.values() for n in per.values())
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.path(CAPACITY_FILE)
    payload = {"grade_band": cfg.grade_band, "templates": table, "total": total}
    data = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    _write_bytes(path, (data + "\n").encode("utf-8"))
    write_manifest(
        path,
        {
            "command": "capacity",
            "grade_band": cfg.grade_band,
            "malrules": sorted(malrules) if malrules else None,
            "fast_paths": fast_paths,
        },
    )
    width = max(len(f"{m}/{t}") for m, per in table.items() for t in per)
    for malrule, per in table.items():
        for template, count in per.items():
            print(f"{malrule + '/' + template:<{width}}  {count:>12}")
    print(f"{'total':<{width}}  {total:>12}")
    return 0


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=None, help="run seed (default 0)")
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--out-dir", dest="out_dir", default=None, help="artifact directory")
    parser.add_argument(
        "--grade-band", dest="grade_band", choices=BANDS, default=None,
        help="difficulty band (default middle)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="malkit",
        description="Generate misconception-paired math problems and evaluate models on them.",
    )
    parser.add_argument("--version", action="version", version=f"malkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="show the malrule catalog by NCTM strand")
    _add_common(p)
    p.set_defaults(func=lambda a: cmd_list(RunConfig(a)))

    p = sub.add_parser("generate", help="draw problem instances")
    _add_common(p)
    p.add_argument("--per-template", dest="per_template", type=int, default=None)
    p.set_defaults(func=lambda a: cmd_generate(RunConfig(a)))

    p = sub.add_parser("pairs", help="sample evaluation pairs from instances")
    _add_common(p)
    p.add_argument(
        "--same-pairs-per-group", dest="same_pairs_per_group", type=int, default=None
    )
    p.add_argument(
        "--cross-pairs-per-malrule", dest="cross_pairs_per_malrule", type=int, default=None
    )
    p.set_defaults(func=lambda a: cmd_pairs(RunConfig(a)))

    p = sub.add_parser("prompts", help="render evaluation prompts")
    _add_common(p)
    p.add_argument("--tasks", default=None, help="comma list from cra,mra,fmra")
    p.add_argument("--steps", choices=("on", "off", "both"), default=None)
    p.set_defaults(func=lambda a: cmd_prompts(RunConfig(a)))

    p = sub.add_parser("eval", help="send prompts to a model endpoint and grade")
    _add_common(p)
    p.add_argument("--model", default=None, help="profile name from the config file")
    p.add_argument("--max-in-flight", dest="max_in_flight", type=int, default=None)
    p.set_defaults(func=lambda a: cmd_eval(RunConfig(a)))

    p = sub.add_parser("report", help="aggregate graded records into metrics")
    _add_common(p)
    p.set_defaults(func=lambda a: cmd_report(RunConfig(a)))

    p = sub.add_parser("capacity", help="count usable instances per template")
    _add_common(p)
    p.add_argument("--malrule", action="append", default=None, help="restrict to a malrule")
    p.add_argument(
        "--no-fast-paths", dest="fast_paths", action="store_false", default=True,
        help="force full enumeration, ignoring closed forms",
    )
    p.set_defaults(
        func=lambda a: cmd_capacity(RunConfig(a), malrules=a.malrule, fast_paths=a.fast_paths)
    )
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except LineageError as exc:
        print(_dumps({"error": "LineageError", "message": str(exc)}), file=sys.stderr)
        return 3
    except MalkitError as exc:
        print(_dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(
            _dumps({"error": "MissingFile", "message": str(exc.filename or exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
