"""Sidecar manifests that tie each pipeline artifact to its inputs.

Every stage writes <artifact>.manifest.json next to its output: the config
that produced the artifact, a hash of that config, and the sha256 of every
input file. Downstream stages verify those hashes before use, so a report
can never silently mix artifacts from different runs. Manifests carry no
timestamps; rerunning a stage with the same inputs is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__
from .errors import LineageError


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_hash(config):
    payload = json.dumps(config, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def manifest_path(artifact_path):
    artifact_path = Path(artifact_path)
    return artifact_path.with_name(artifact_path.name + ".manifest.json")


def write_manifest(artifact_path, config, inputs=None):
    """Write the sidecar manifest for artifact_path and return its path.

    inputs maps a logical name to the input file's path; hashes are taken
    now, so write inputs before their consumers' manifests.
    """
    artifact_path = Path(artifact_path)
    record = {
        "artifact": artifact_path.name,
        "artifact_sha256": file_sha256(artifact_path),
        "tool": f"malkit {__version__}",
        "config": config,
        "config_hash": config_hash(config),
        "inputs": {
            name: {"path": Path(path).name, "sha256": file_sha256(path)}
            for name, path in (inputs or {}).items()
        },
    }
    path = manifest_path(artifact_path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_manifest(artifact_path):
    path = manifest_path(artifact_path)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise LineageError(f"no manifest for {Path(artifact_path).name}") from None
    except json.JSONDecodeError as exc:
        raise LineageError(f"unreadable manifest {path.name}: {exc}") from None


def verify_artifact(artifact_path):
    """Check artifact_path against its own manifest; returns the manifest."""
    artifact_path = Path(artifact_path)
    manifest = read_manifest(artifact_path)
    if not artifact_path.exists():
        raise LineageError(f"missing artifact {artifact_path.name}")
    actual = file_sha256(artifact_path)
    if actual != manifest["artifact_sha256"]:
        raise LineageError(
            f"{artifact_path.name} does not match its manifest "
            f"(expected {manifest['artifact_sha256'][:12]}, found {actual[:12]})"
        )
    return manifest


def verify_inputs(manifest, base_dir):
    """Check every input recorded in a manifest against the files on disk."""
    base_dir = Path(base_dir)
    for name, entry in manifest["inputs"].items():
        path = base_dir / entry["path"]
        if not path.exists():
            raise LineageError(f"missing input {entry['path']} ({name})")
        actual = file_sha256(path)
        if actual != entry["sha256"]:
            raise LineageError(
                f"input {entry['path']} ({name}) does not match the manifest "
                f"(expected {entry['sha256'][:12]}, found {actual[:12]})"
            )
