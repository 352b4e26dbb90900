"""CSV and JSON writers for solver output and verification reports."""

import json
from pathlib import Path
from typing import Any

import numpy as np

from src.errors import ConfigurationError
from src.model.sampled import FloatArray

FLOAT_FORMAT = "%.17g"


def write_csv(
    path: Path, columns: dict[str, FloatArray], provenance: dict[str, str]
) -> Path:
    """Write ``# key=value`` provenance lines, a header row and one row per grid point."""
    lengths = {len(values) for values in columns.values()}
    if len(lengths) != 1:
        raise ConfigurationError(f"Columns have different lengths: {sorted(lengths)}")

    header_lines = [f"# {key}={value}" for key, value in provenance.items()]
    header_lines.append(",".join(columns))
    table = np.column_stack([np.asarray(v, dtype=float) for v in columns.values()])

    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        table,
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header="\n".join(header_lines),
        comments="",
    )
    return path


def read_csv(path: Path) -> tuple[dict[str, str], dict[str, FloatArray]]:
    """Inverse of :func:`write_csv`: (provenance, columns)."""
    lines = path.read_text(encoding="utf-8").splitlines()
    provenance: dict[str, str] = {}
    index = 0
    while index < len(lines) and lines[index].startswith("#"):
        key, _, value = lines[index][1:].strip().partition("=")
        provenance[key] = value
        index += 1
    if index >= len(lines):
        raise ConfigurationError(f"{path} has no header row")

    names = lines[index].split(",")
    table = np.loadtxt(lines[index + 1 :], delimiter=",", ndmin=2)
    return provenance, {name: table[:, i].copy() for i, name in enumerate(names)}


def write_json(path: Path, payload: dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, default=str), encoding="utf-8")
    return path
