"""Run manifests: every output directory records how it was produced.

The manifest carries the command line, the fully resolved configuration,
seeds, sha256 digests of every input file, the tool version, and a
timestamp.  Determinism checks compare outputs with the timestamp excluded.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__

MANIFEST_NAME = "manifest.json"


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def build_manifest(
    command_line: Sequence[str],
    config: Mapping,
    seeds: Mapping[str, int] | None = None,
    input_paths: Sequence = (),
) -> dict:
    return {
        "command_line": list(command_line),
        "config": dict(config),
        "seeds": dict(seeds or {}),
        "input_digests": {
            str(path): file_digest(path) for path in input_paths
        },
        "tool_version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def write_manifest(out_dir, manifest: Mapping) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / MANIFEST_NAME
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
    return path


def read_manifest(out_dir) -> dict:
    with open(Path(out_dir) / MANIFEST_NAME, "r", encoding="utf-8") as fh:
        return json.load(fh)
