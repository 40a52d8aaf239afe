"""Finite distance spaces, point clouds under p-norms, Cantor corpora."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._config import default_tolerance

DISTANCE = "distance"
SEMIDISTANCE = "semidistance"
INF = math.inf


class StructureError(ValueError):
    """Input that cannot even be read as a square labeled matrix."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.axiom} at ({self.i},{self.j})"


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class FiniteDistanceSpace:
    """n labeled points and a symmetric nonnegative distance matrix.

    Construction only checks shape; use :func:`validate_space` for the axioms.
    The stored matrix is a read-only float64 copy.
    """

    dist: np.ndarray
    labels: tuple[str, ...] = ()
    kind: str = DISTANCE
    tol: float = field(default_factory=default_tolerance)

    def __post_init__(self):
        dist = np.array(self.dist, dtype=np.float64, copy=True)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise StructureError(f"distance matrix must be square, got shape {dist.shape}")
        n = dist.shape[0]
        if n < 1:
            raise StructureError("a space needs at least one point")
        labels = tuple(str(s) for s in self.labels) if self.labels else _default_labels(n)
        if len(labels) != n:
            raise StructureError(f"{len(labels)} labels for a {n}x{n} matrix")
        if self.kind not in (DISTANCE, SEMIDISTANCE):
            raise StructureError(f"unknown kind {self.kind!r}")
        if not np.all(np.isfinite(dist)):
            raise StructureError("distance matrix contains non-finite entries")
        dist.setflags(write=False)
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, FiniteDistanceSpace):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.labels == other.labels
            and np.array_equal(self.dist, other.dist)
        )

    __hash__ = None

    def with_matrix(self, dist, kind: str | None = None) -> FiniteDistanceSpace:
        return FiniteDistanceSpace(dist, self.labels, kind or self.kind, self.tol)

    def subspace(self, subset: Iterable[int]) -> FiniteDistanceSpace:
        idx = check_indices(self, subset)
        if not idx:
            raise ValueError("subspace of the empty set")
        return FiniteDistanceSpace(
            self.dist[np.ix_(idx, idx)], [self.labels[i] for i in idx], self.kind, self.tol
        )


def check_indices(space: FiniteDistanceSpace, subset: Iterable[int]) -> list[int]:
    idx = sorted({int(i) for i in subset})
    for i in idx:
        if not 0 <= i < space.n:
            raise IndexError(f"point index {i} out of range for a {space.n}-point space")
    return idx


def validate_space(space: FiniteDistanceSpace) -> list[Violation]:
    """All axiom violations with their index pair; empty list means ok."""
    d = space.dist
    tol = space.tol
    out = []
    n = space.n
    for i in range(n):
        if abs(d[i, i]) > tol:
            out.append(Violation("nonzero diagonal", i, i))
    for i in range(n):
        for j in range(n):
            if d[i, j] < -tol:
                out.append(Violation("negative entry", i, j))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i, j] - d[j, i]) > tol:
                out.append(Violation("symmetry", i, j))
            elif space.kind == DISTANCE and d[i, j] <= tol:
                out.append(Violation("zero off-diagonal", i, j))
    return out


def is_valid(space: FiniteDistanceSpace) -> bool:
    return not validate_space(space)


def diameter(space: FiniteDistanceSpace, subset: Iterable[int] | None = None) -> float:
    """Largest distance within ``subset`` (all points by default); 0 for |subset| < 2."""
    idx = list(range(space.n)) if subset is None else check_indices(space, subset)
    if len(idx) < 2:
        return 0.0
    return float(space.dist[np.ix_(idx, idx)].max())


# ---------------------------------------------------------------- point clouds


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Points in R^dim measured with the p-(quasi)norm; ``p`` may be ``math.inf``."""

    points: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise StructureError(f"points must be a nonempty n x dim array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise StructureError("point coordinates must be finite")
        p = float(self.p)
        if not (p > 0):
            raise ValueError(f"norm exponent must be positive or inf, got {self.p}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def pairwise_norms(points: np.ndarray, p: float) -> np.ndarray:
    from .norms import norm_rows

    diff = points[:, None, :] - points[None, :, :]
    return norm_rows(diff.reshape(-1, points.shape[1]), p).reshape(points.shape[0], points.shape[0])


def cloud_to_space(cloud: PointCloud, labels: Sequence[str] = (), tol: float | None = None) -> FiniteDistanceSpace:
    """Pairwise p-norm distances.  Coincident points, or points closer than
    the tolerance, make the result a semidistance."""
    dist = pairwise_norms(cloud.points, cloud.p)
    if tol is None:
        tol = default_tolerance()
    off = dist[~np.eye(cloud.n, dtype=bool)]
    kind = SEMIDISTANCE if np.any(off <= tol) else DISTANCE
    return FiniteDistanceSpace(dist, tuple(labels), kind, tol)


# ---------------------------------------------------------------- Cantor sets


@dataclass(frozen=True)
class CantorSpec:
    """Stage ``level`` of a Cantor construction keeping fraction ``ratios[s]`` at each end."""

    level: int
    ratios: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        ratios = tuple(Fraction(r) for r in self.ratios)
        if len(ratios) != self.level:
            raise ValueError(f"need {self.level} ratios, got {len(ratios)}")
        for r in ratios:
            if not 0 < r < Fraction(1, 2):
                raise ValueError(f"ratio {r} outside (0, 1/2)")
        object.__setattr__(self, "ratios", ratios)

    @classmethod
    def uniform(cls, level: int, ratio=Fraction(1, 3)) -> CantorSpec:
        return cls(level, (Fraction(ratio),) * level)


def cantor_intervals(spec: CantorSpec) -> list[tuple[Fraction, Fraction]]:
    intervals = [(Fraction(0), Fraction(1))]
    for r in spec.ratios:
        nxt = []
        for a, b in intervals:
            keep = r * (b - a)
            nxt.append((a, a + keep))
            nxt.append((b - keep, b))
        intervals = nxt
    return intervals


def cantor_points(spec: CantorSpec, p: float = 2.0) -> PointCloud:
    """The 2^(level+1) interval endpoints of the stage, ascending, as a 1-d cloud."""
    ends = sorted({e for iv in cantor_intervals(spec) for e in iv})
    return PointCloud(np.array([float(e) for e in ends])[:, None], p)


def line_space(xs: Sequence[float], power: float = 1.0) -> FiniteDistanceSpace:
    """|x - y|**power on the given reals; handy for the classical examples."""
    x = np.asarray(xs, dtype=np.float64)
    kind = DISTANCE if len(set(x.tolist())) == len(x) else SEMIDISTANCE
    return FiniteDistanceSpace(np.abs(x[:, None] - x[None, :]) ** power, kind=kind)
