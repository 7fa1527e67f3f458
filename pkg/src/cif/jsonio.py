"""Canonical JSON serialization: sorted keys, floats at 12 significant digits.

Every payload the service or CLI emits goes through ``canonical_dumps`` so
that identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
import math

import numpy as np


def format_float(value: float) -> str:
    """Format a finite float with 12 significant digits."""
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite float {value!r}")
    if value == 0.0:
        value = 0.0  # collapse -0.0
    return "%.12g" % value


def _encode(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isnan(f):
            out.append("null")  # NaN marks an undefined cell
        else:
            out.append(format_float(f))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonically serialize {type(obj).__name__}")


def canonical_dumps(obj) -> str:
    """Serialize ``obj`` to a compact, deterministic JSON string."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)
