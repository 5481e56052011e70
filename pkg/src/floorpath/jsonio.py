"""Deterministic JSON output: floats are cut to 9 significant digits."""

import json
from pathlib import Path

SIG_DIGITS = 9


def _rounded(obj):
    if isinstance(obj, float):
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_rounded(obj), indent=2) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))
