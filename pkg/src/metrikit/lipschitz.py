"""Lipschitz constants of maps between finite spaces and the elementary
calculus rules for real-valued Lipschitz functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import SEMIDISTANCE, FiniteDistanceSpace, check_indices
from .properties import find_triangle_violation


class NotSemimetricError(ValueError):
    def __init__(self, triple):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"triangle inequality fails at ({x},{y},{z})")


@dataclass(frozen=True)
class LipschitzConstant:
    """Measured constant; ``value is None`` means unbounded (some pair at
    distance 0 is sent to distinct values)."""

    value: float | None
    witness: tuple[int, int] | None

    @property
    def bounded(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "bounded": self.bounded,
            "constant": self.value,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass(frozen=True, eq=False)
class FiniteMap:
    domain: FiniteDistanceSpace
    codomain: FiniteDistanceSpace
    assignment: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(i) for i in self.assignment)
        if len(a) != self.domain.n:
            raise ValueError(f"assignment has {len(a)} entries for a {self.domain.n}-point domain")
        if any(not 0 <= i < self.codomain.n for i in a):
            raise ValueError("assignment points outside the codomain")
        object.__setattr__(self, "assignment", a)

    def image(self, subset: Iterable[int] | None = None) -> list[int]:
        idx = range(self.domain.n) if subset is None else check_indices(self.domain, subset)
        return sorted({self.assignment[i] for i in idx})

    def then(self, other: FiniteMap) -> FiniteMap:
        """``other`` after ``self``."""
        if not (self.codomain is other.domain or self.codomain == other.domain):
            raise ValueError("codomain of the first map is not the domain of the second")
        return FiniteMap(self.domain, other.codomain, tuple(other.assignment[j] for j in self.assignment))


@dataclass(frozen=True, eq=False)
class RealFunction:
    space: FiniteDistanceSpace
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, copy=True).ravel()
        if v.shape[0] != self.space.n:
            raise ValueError(f"{v.shape[0]} values for a {self.space.n}-point space")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def _new(self, values):
        return RealFunction(self.space, values)

    def __add__(self, other):
        return self._new(self.values + other.values)

    def __mul__(self, other):
        if isinstance(other, RealFunction):
            return self._new(self.values * other.values)
        return self._new(float(other) * self.values)

    __rmul__ = __mul__

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))


def ratio_constant(num: np.ndarray, den: np.ndarray) -> LipschitzConstant:
    n = num.shape[0]
    if n < 2:
        return LipschitzConstant(0.0, None)
    iu, ju = np.triu_indices(n, 1)
    a = num[iu, ju]
    b = den[iu, ju]
    blow = np.flatnonzero((b <= 0) & (a > 0))
    if blow.size:
        k = int(blow[0])
        return LipschitzConstant(None, (int(iu[k]), int(ju[k])))
    ratio = np.zeros(a.shape)
    np.divide(a, b, out=ratio, where=b > 0)
    k = int(np.argmax(ratio))
    if ratio[k] <= 0:
        return LipschitzConstant(0.0, None)
    return LipschitzConstant(float(ratio[k]), (int(iu[k]), int(ju[k])))


def pullback_semidistance(fmap: FiniteMap) -> FiniteDistanceSpace:
    idx = np.asarray(fmap.assignment)
    mat = fmap.codomain.dist[np.ix_(idx, idx)]
    return FiniteDistanceSpace(mat, fmap.domain.labels, SEMIDISTANCE, fmap.domain.tol)


def lipschitz_constant(fmap: FiniteMap) -> LipschitzConstant:
    """Least L with d2(f(x), f(y)) <= L d1(x, y) over all pairs."""
    return ratio_constant(pullback_semidistance(fmap).dist, fmap.domain.dist)


def lipschitz_constant_direct(fmap: FiniteMap) -> LipschitzConstant:
    """Same number as :func:`lipschitz_constant`, by a plain pair loop over the codomain."""
    d1 = fmap.domain.dist
    d2 = fmap.codomain.dist
    f = fmap.assignment
    best, wit = 0.0, None
    for x in range(fmap.domain.n):
        for y in range(x + 1, fmap.domain.n):
            top = d2[f[x], f[y]]
            if top <= 0:
                continue
            if d1[x, y] <= 0:
                return LipschitzConstant(None, (x, y))
            r = top / d1[x, y]
            if r > best:
                best, wit = r, (x, y)
    return LipschitzConstant(float(best), wit)


def function_constant(f: RealFunction) -> LipschitzConstant:
    v = f.values
    return ratio_constant(np.abs(v[:, None] - v[None, :]), f.space.dist)


def is_lipschitz(f: RealFunction, L: float, tol: float | None = None) -> bool:
    """|f(x) - f(y)| <= L d(x, y) for every pair."""
    tol = f.space.tol if tol is None else tol
    v = f.values
    return bool(np.all(np.abs(v[:, None] - v[None, :]) <= L * f.space.dist + tol))


def is_lipschitz_one_sided(f: RealFunction, L: float, tol: float | None = None) -> bool:
    """f(x) <= f(y) + L d(x, y) for every ordered pair."""
    tol = f.space.tol if tol is None else tol
    v = f.values
    return bool(np.all(v[:, None] <= v[None, :] + L * f.space.dist + tol))


def compose_bound(l1: float, l2: float) -> float:
    return l1 * l2


@dataclass(frozen=True)
class BoundCheck:
    name: str
    measured: float
    bound: float
    holds: bool


def _holds(measured, bound, tol):
    return measured <= bound + tol * max(1.0, abs(bound))


def check_compose(map1: FiniteMap, map2: FiniteMap) -> BoundCheck:
    l1 = lipschitz_constant(map1)
    l2 = lipschitz_constant(map2)
    if not (l1.bounded and l2.bounded):
        raise ValueError("composition bound needs both constants finite")
    measured = lipschitz_constant(map1.then(map2))
    bound = compose_bound(l1.value, l2.value)
    tol = map1.domain.tol
    return BoundCheck("compose", measured.value, bound, measured.bounded and _holds(measured.value, bound, tol))


def function_calculus(f1: RealFunction, f2: RealFunction, t: float = -2.5) -> list[BoundCheck]:
    """Measured constants of f1+f2, max, min, f1*f2 and t*f1 against their bounds."""
    if not (f1.space is f2.space or f1.space == f2.space):
        raise ValueError("functions live on different spaces")
    c1, c2 = function_constant(f1), function_constant(f2)
    if not (c1.bounded and c2.bounded):
        raise ValueError("calculus bounds need finite constants")
    l1, l2 = c1.value, c2.value
    a1, a2 = f1.sup, f2.sup
    space = f1.space
    cases = [
        ("sum", f1 + f2, l1 + l2),
        ("max", RealFunction(space, np.maximum(f1.values, f2.values)), max(l1, l2)),
        ("min", RealFunction(space, np.minimum(f1.values, f2.values)), max(l1, l2)),
        ("product", f1 * f2, a1 * l2 + a2 * l1),
        ("scalar", t * f1, abs(t) * l1),
    ]
    out = []
    for name, g, bound in cases:
        m = function_constant(g)
        out.append(BoundCheck(name, m.value, bound, m.bounded and _holds(m.value, bound, space.tol)))
    return out


def distance_to_point(space: FiniteDistanceSpace, p: int) -> RealFunction:
    """x -> d(x, p); refuses spaces failing the triangle inequality."""
    check_indices(space, [p])
    bad = find_triangle_violation(space)
    if bad is not None:
        raise NotSemimetricError(bad)
    return RealFunction(space, space.dist[:, p])


@dataclass(frozen=True)
class ImageVerdict:
    source_connected: bool
    constant: float | None
    image: tuple[int, ...]
    image_connected: bool | None  # None when the source is not eps-connected
    holds: bool


def epsilon_image_check(fmap: FiniteMap, subset: Sequence[int], eps: float) -> ImageVerdict:
    """If ``subset`` is eps-connected, its image must be L*eps-connected."""
    from .connectivity import is_epsilon_connected

    L = lipschitz_constant(fmap)
    src_ok, _ = is_epsilon_connected(fmap.domain, subset, eps)
    image = tuple(fmap.image(subset))
    if not src_ok or not L.bounded:
        return ImageVerdict(src_ok, L.value, image, None, True)
    if L.value == 0 or len(image) == 1:
        return ImageVerdict(True, L.value, image, True, len(image) == 1)
    # steps scale by at most L, so the slack on the source side scales too
    slack = max(L.value, 1.0) * fmap.domain.tol + 4 * np.finfo(float).eps * L.value * eps
    img_ok, _ = is_epsilon_connected(fmap.codomain, image, L.value * eps, tol=slack)
    return ImageVerdict(True, L.value, image, img_ok, img_ok)
