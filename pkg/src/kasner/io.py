"""Polygon and report serialization.

Floats are written with 17 significant digits, so files round-trip bit for
bit and re-serializing a parsed file reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .geom_core import Polygon
from .parametric import HexagonParams, PentagonParams


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dump(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError("non-finite float in JSON output")
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float, np.number)) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(_dump(x, indent, level) for x in obj) + "]"
        items = [pad + _dump(x, indent, level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with fixed 17-digit float formatting."""
    return _dump(obj, indent, 0) + "\n"


def polygon_to_obj(K: Polygon) -> dict:
    return {"vertices": K.vertices.tolist()}


def polygon_from_obj(obj) -> Polygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise ValueError('polygon JSON must be an object with a "vertices" array')
    return Polygon(np.asarray(obj["vertices"], dtype=float))


def polygon_to_csv(K: Polygon) -> str:
    return "".join(f"{fmt(x)},{fmt(y)}\n" for x, y in K.vertices)


def polygon_from_csv(text: str) -> Polygon:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    return Polygon(np.array([[float(x), float(y)] for x, y in rows]))


def read_polygon(path) -> Polygon:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return polygon_from_csv(text)
    return polygon_from_obj(json.loads(text))


def polygon_text(K: Polygon, path=None) -> str:
    if path is not None and Path(path).suffix.lower() == ".csv":
        return polygon_to_csv(K)
    return dumps(polygon_to_obj(K))


def read_params(path) -> PentagonParams | HexagonParams:
    obj = json.loads(Path(path).read_text())
    if "pentagon" in obj:
        q = obj["pentagon"]
        return PentagonParams(*(float(q[k]) for k in "abcd"))
    if "hexagon" in obj:
        q = obj["hexagon"]
        return HexagonParams(*(float(q[k]) for k in "abcdef"))
    raise ValueError('parameter file needs a "pentagon" or "hexagon" key')


def params_to_obj(p: PentagonParams | HexagonParams) -> dict:
    key = "pentagon" if isinstance(p, PentagonParams) else "hexagon"
    return {key: {k: float(v) for k, v in vars(p).items()}}


def write_atomic(path, text: str) -> None:
    """Write to a temporary file beside ``path``, then rename over it."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
