"""Deterministic JSON and CSV report writers."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np


class ReportError(OSError):
    """Writing a report failed; the message names the path."""


def jsonable(obj):
    """Plain JSON types only: numpy scalars unwrapped, complex as ``[re, im]``,
    non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(float(obj.real)), jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    return obj


def dumps_json(data) -> str:
    # json renders floats with repr, the shortest round-trip form
    return json.dumps(jsonable(data), sort_keys=True, indent=2, ensure_ascii=False,
                      allow_nan=False) + "\n"


def dumps_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


def _cell(v):
    v = jsonable(v)
    if isinstance(v, list):
        return json.dumps(v)
    return v


def emit_report(data, fmt: str, path: str | Path, columns: list[str] | None = None) -> None:
    """Write ``data`` as JSON (any structure) or CSV (a list of row dicts)."""
    if fmt == "json":
        text = dumps_json(data if data is not None else {})
    elif fmt == "csv":
        text = dumps_csv(list(data or []), columns)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
