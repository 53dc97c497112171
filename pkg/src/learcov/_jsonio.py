"""JSON emission with 17-significant-digit floats.

The standard library encoder formats floats with repr, which uses the
shortest round-tripping form. Reports here promise a fixed 17-significant-
digit rendering so emitted bytes are identical across runs and platforms,
hence this small emitter. Non-finite floats have no JSON representation and
are serialized as null. Object keys keep insertion order; numpy scalars and
arrays are converted to their Python equivalents.
"""
from __future__ import annotations

import json
import math

import numpy as np

__all__ = ["dumps", "dump_to_path"]


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _emit(obj, lines: list, indent: int | None, level: int) -> None:
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end_pad = "" if indent is None else "\n" + " " * (indent * level)
    if obj is None:
        lines.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        lines.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        lines.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        lines.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        lines.append(json.dumps(obj))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), lines, indent, level)
    elif isinstance(obj, dict):
        if not obj:
            lines.append("{}")
            return
        lines.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings (got {key!r})")
            if i:
                lines.append("," if indent is not None else ", ")
            lines.append(pad + json.dumps(key) + ": ")
            _emit(value, lines, indent, level + 1)
        lines.append(end_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            lines.append("[]")
            return
        lines.append("[")
        for i, value in enumerate(obj):
            if i:
                lines.append("," if indent is not None else ", ")
            lines.append(pad)
            _emit(value, lines, indent, level + 1)
        lines.append(end_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps(obj, indent: int | None = None) -> str:
    """Serialize to a JSON string; floats carry 17 significant digits."""
    lines: list = []
    _emit(obj, lines, indent, 0)
    return "".join(lines)


def dump_to_path(obj, path, indent: int | None = 2) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj, indent=indent))
        fh.write("\n")
