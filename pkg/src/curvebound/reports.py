"""Machine-readable report serialization: JSON for structure, CSV for traces.

Every report carries a schema_version field; floats are rounded to nine
significant digits before serialization so repeated runs emit identical
bytes.
"""

from __future__ import annotations

import json
import math

from .constants import SCHEMA_VERSION


def _round_floats(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def to_json(report: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION}
    body.update(_round_floats(report))
    return json.dumps(body, indent=2) + "\n"


def trace_to_csv(trace) -> str:
    lines = ["iter,best_length"]
    for step, value in trace:
        lines.append(f"{step},{float(f'{value:.9g}')!r}")
    return "\n".join(lines) + "\n"
