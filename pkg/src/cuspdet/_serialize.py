"""Deterministic JSON/CSV output.

Floats are rendered with 17 significant digits (round-trip exact), keys
sorted, separators fixed; identical inputs therefore produce byte-identical
output regardless of parallelism or platform dict order.
"""

import math


def format_float(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value in output: {x}")
        return format(x, ".17g")
    return repr(x)


def _encode(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            _encode(str(key), out)
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _encode(v, out)
        out.append("]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, int):
        out.append(repr(obj))
    elif isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'"{escaped}"')
    elif obj is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def canonical_json(obj):
    out = []
    _encode(obj, out)
    return "".join(out)


def flat_rows(obj, prefix=""):
    """Depth-first (name, value) rows for the CSV hand-off."""
    rows = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            name = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(flat_rows(obj[key], name))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            rows.extend(flat_rows(v, f"{prefix}[{i}]"))
    elif isinstance(obj, bool):
        rows.append((prefix, "true" if obj else "false"))
    elif isinstance(obj, float):
        rows.append((prefix, format_float(obj)))
    else:
        rows.append((prefix, str(obj)))
    return rows
