"""Deterministic CSV and JSON-sidecar emission.

Floats are serialized with 17 significant digits (lossless for float64),
lines end with a bare newline and carry no trailing delimiter, and sidecar
JSON uses sorted keys, so identical configurations produce byte-identical
files on every rerun.
"""

from __future__ import annotations

import json
from pathlib import Path

ARTIFACT_VERSION = "0.1.0"


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return format(float(x), ".17g")


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(fmt(x) for x in row) + "\n")
    except OSError as err:
        raise OSError(f"failed writing {path}: {err}") from err
    return path


def write_sidecar(csv_path: Path, config: dict, extra: dict | None = None) -> Path:
    """JSON sidecar with the resolved configuration, same basename as the CSV."""
    csv_path = Path(csv_path)
    side = csv_path.with_suffix(".json")
    payload = {"artifact_version": ARTIFACT_VERSION, "config": config}
    if extra:
        payload.update(extra)
    try:
        with open(side, "w", newline="") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as err:
        raise OSError(f"failed writing {side}: {err}") from err
    return side
