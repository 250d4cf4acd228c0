"""Wire encoding for complex data: every complex scalar travels as [re, im]."""

import numpy as np

__all__ = [
    "ScenarioError",
    "complex_to_pair",
    "pair_to_complex",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


class ScenarioError(ValueError):
    """A JSON payload failed validation. The message names the offending field."""


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def complex_to_pair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_to_complex(obj, field):
    if not isinstance(obj, (list, tuple)) or len(obj) != 2 or not all(_is_number(t) for t in obj):
        raise ScenarioError(f"{field}: expected an [re, im] pair, got {obj!r}")
    return complex(obj[0], obj[1])


def vector_to_json(v):
    return [complex_to_pair(z) for z in np.asarray(v).ravel()]


def vector_from_json(obj, field, length=None):
    if not isinstance(obj, list):
        raise ScenarioError(f"{field}: expected a list of [re, im] pairs")
    out = np.array([pair_to_complex(p, f"{field}[{i}]") for i, p in enumerate(obj)], dtype=complex)
    if length is not None and out.size != length:
        raise ScenarioError(f"{field}: expected length {length}, got {out.size}")
    return out


def matrix_to_json(a):
    a = np.asarray(a)
    return [[complex_to_pair(z) for z in row] for row in a]


def matrix_from_json(obj, field, shape=None):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ScenarioError(f"{field}: expected a list of rows of [re, im] pairs")
    width = len(obj[0])
    rows = []
    for i, row in enumerate(obj):
        if len(row) != width:
            raise ScenarioError(f"{field}[{i}]: ragged row (expected {width} entries)")
        rows.append([pair_to_complex(p, f"{field}[{i}][{j}]") for j, p in enumerate(row)])
    out = np.array(rows, dtype=complex)
    if shape is not None and out.shape != shape:
        raise ScenarioError(f"{field}: expected shape {shape}, got {out.shape}")
    return out
