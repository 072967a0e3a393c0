"""Named symbol generators used by the probes, the battery and the CLI."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .series import PowerSeries, ps_pow


def power1m(beta: float, N: int) -> PowerSeries:
    """Truncation of ``(1 - z)^beta``."""
    return ps_pow(PowerSeries([1.0, -1.0]), beta, N)


def log1m(N: int) -> PowerSeries:
    """Truncation of ``log(1/(1-z)) = sum_{k>=1} z^k / k``."""
    c = np.zeros(N + 1)
    c[1:] = 1.0 / np.arange(1, N + 1)
    return PowerSeries(c)


def lacunary(N: int, terms: int = 11) -> PowerSeries:
    """Truncation of ``sum_{k<terms} z^{2^k}`` at degree N."""
    c = np.zeros(N + 1)
    for k in range(terms):
        if 2**k <= N:
            c[2**k] = 1.0
    return PowerSeries(c)


GENERATORS = {
    "zero": lambda N: PowerSeries.zero(N),
    "z": lambda N: PowerSeries.monomial(1).truncate(max(N, 1)),
    "z2": lambda N: PowerSeries.monomial(2).truncate(max(N, 2)),
    "z5": lambda N: PowerSeries.monomial(5).truncate(max(N, 5)),
    "log1m": log1m,
    "sqrt1m": lambda N: power1m(0.5, N),
    "invquart1m": lambda N: power1m(-0.25, N),
    "invsqrt1m": lambda N: power1m(-0.5, N),
    "lacunary": lacunary,
}

DEFAULT_BATTERY = ("z", "z2", "log1m", "sqrt1m", "invquart1m", "lacunary")


def make_symbol(name_or_path: str | dict, N: int) -> PowerSeries:
    """A named generator at degree N, a series record, or a path to a series JSON file."""
    if isinstance(name_or_path, dict):
        return PowerSeries.from_dict(name_or_path)
    if name_or_path in GENERATORS:
        return GENERATORS[name_or_path](N)
    path = Path(name_or_path)
    if path.suffix == ".json" or path.exists():
        return PowerSeries.from_dict(json.loads(path.read_text(encoding="utf-8")))
    raise KeyError(f"unknown symbol {name_or_path!r}; known: {', '.join(sorted(GENERATORS))}")
