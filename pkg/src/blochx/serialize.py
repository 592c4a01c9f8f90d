"""JSON helpers: complex numbers as [re, im] pairs, matrices as row-major
nested arrays, and a deterministic pretty-printer emitting floats with 17
significant digits."""
from __future__ import annotations

import json
import math

import numpy as np


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    rows = []
    for row in obj:
        rows.append([complex(float(z[0]), float(z[1])) for z in row])
    m = np.array(rows, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix JSON is not square, shape {m.shape}")
    return m


def complex_vector_to_json(v) -> list:
    return [complex_to_json(z) for z in np.asarray(v, dtype=complex)]


def _format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x} cannot be serialized")
    return format(x, ".17g")


def _is_number(x) -> bool:
    return isinstance(x, (bool, int, float, np.integer, np.floating))


def _emit(obj, level: int, pieces: list[str]) -> None:
    pad = "  " * level
    inner = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            pieces.append("{}")
            return
        pieces.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            pieces.append(f"{inner}{json.dumps(str(key))}: ")
            _emit(value, level + 1, pieces)
            pieces.append(",\n" if i < len(obj) - 1 else "\n")
        pieces.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            pieces.append("[]")
            return
        if all(_is_number(x) for x in items):
            pieces.append("[" + ", ".join(_format_number(x) for x in items) + "]")
            return
        pieces.append("[\n")
        for i, value in enumerate(items):
            pieces.append(inner)
            _emit(value, level + 1, pieces)
            pieces.append(",\n" if i < len(items) - 1 else "\n")
        pieces.append(pad + "]")
    elif isinstance(obj, str):
        pieces.append(json.dumps(obj))
    elif obj is None:
        pieces.append("null")
    elif _is_number(obj):
        pieces.append(_format_number(obj))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), level, pieces)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic pretty-printed JSON: insertion-ordered keys, 2-space
    indent, number-only lists inlined, floats at 17 significant digits."""
    pieces: list[str] = []
    _emit(obj, 0, pieces)
    return "".join(pieces)
