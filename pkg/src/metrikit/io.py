"""File formats: CSV distance matrices and JSON point clouds."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from ._config import default_tolerance
from .core import DISTANCE, SEMIDISTANCE, FiniteDistanceSpace, PointCloud, StructureError, cloud_to_space
from .norms import parse_exponent


class FormatError(ValueError):
    pass


def fmt(x: float) -> str:
    """Shortest round-trip decimal; integers keep a trailing '.0'."""
    if x == math.inf:
        return "inf"
    return repr(float(x))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_matrix_csv(text: str, tol: float | None = None) -> FiniteDistanceSpace:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise FormatError("empty CSV")
    labels: list[str] = []
    # one extra row means a header, even when the labels look numeric
    if len(rows) == len(rows[0]) + 1 or not all(_is_number(c) for c in rows[0]):
        labels = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if len({len(r) for r in rows}) != 1 or len(rows) != len(rows[0]):
        raise FormatError(f"matrix is not square ({len(rows)} rows of lengths {sorted({len(r) for r in rows})})")
    try:
        mat = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"non-numeric matrix entry: {exc}") from None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise FormatError(f"matrix is not square ({len(rows)} rows of lengths {sorted({len(r) for r in rows})})")
    tol = default_tolerance() if tol is None else tol
    bad = np.argwhere(np.abs(mat - mat.T) > tol)
    if bad.size:
        i, j = bad[0]
        raise FormatError(f"matrix not symmetric at ({i},{j})")
    off = mat[~np.eye(mat.shape[0], dtype=bool)]
    kind = SEMIDISTANCE if np.any(off <= tol) else DISTANCE
    try:
        return FiniteDistanceSpace(mat, tuple(labels), kind, tol)
    except StructureError as exc:
        raise FormatError(str(exc)) from None


def format_matrix_csv(space: FiniteDistanceSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(space.labels)
    for row in space.dist:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def parse_cloud_json(text: str) -> PointCloud:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(obj, dict) or "points" not in obj:
        raise FormatError('point cloud JSON needs a "points" array')
    pts = obj["points"]
    if not isinstance(pts, list) or not pts or not all(isinstance(p, list) for p in pts):
        raise FormatError('"points" must be a nonempty array of number arrays')
    if len({len(p) for p in pts}) != 1:
        raise FormatError("points have different dimensions")
    try:
        p = parse_exponent(obj.get("norm", 2))
        return PointCloud(np.array(pts, dtype=np.float64), p)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def format_cloud_json(cloud: PointCloud) -> str:
    norm = "inf" if cloud.p == math.inf else cloud.p
    return json.dumps({"points": cloud.points.tolist(), "norm": norm}) + "\n"


def read_space(path, tol: float | None = None) -> tuple[FiniteDistanceSpace, PointCloud | None]:
    """Load a CSV matrix or a JSON point cloud (by extension or content)."""
    text = Path(path).read_text()
    if str(path).lower().endswith(".json") or text.lstrip().startswith("{"):
        cloud = parse_cloud_json(text)
        return cloud_to_space(cloud, tol=tol), cloud
    return parse_matrix_csv(text, tol), None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"

