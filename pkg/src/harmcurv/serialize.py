"""Deterministic text serialization.

All numeric output goes through `fmt`, which prints floats with 17
significant digits.  That is enough to round-trip any double exactly, and
it is byte-stable across runs, which the CLI relies on.
"""

from __future__ import annotations

import math
from typing import Any


def fmt(x: float) -> str:
    """Format one float with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite value in output")
    if x == 0.0:
        x = 0.0  # never print the sign of a negative zero
    return format(x, ".17g")


def _is_scalar_list(obj: list) -> bool:
    return all(not isinstance(item, (dict, list)) for item in obj)


def _write(obj: Any, indent: int, out: list) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(pad + '  "' + str(key) + '": ')
            _write(value, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        if _is_scalar_list(items):
            out.append("[")
            for i, item in enumerate(items):
                _write(item, 0, out)
                if i < len(items) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(pad + "  ")
            _write(item, indent + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Render a report dict as deterministic JSON text."""
    out: list = []
    _write(obj, 0, out)
    out.append("\n")
    return "".join(out)


def complex_pair(z: complex) -> list:
    """A complex number as the [re, im] pair used in every JSON payload."""
    return [float(z.real), float(z.imag)]
