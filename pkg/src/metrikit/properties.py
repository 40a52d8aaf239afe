"""Optimal structural constants of a finite distance space.

All four constants are attained maxima over the finite index set, clamped
below at 1.  Ratios 0/0 are skipped; a positive numerator over a zero
denominator makes the constant infinite.  Witnesses are the
lexicographically smallest index tuples attaining the maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .constructions import chain_metric, chain_ultrametric
from .core import FiniteDistanceSpace


def _triple_constant(space, mode):
    best, x, y, z = _kernels.triple_ratio_max(space.dist, mode)
    if best < 0:
        return 1.0, None
    return max(best, 1.0), (x, y, z)


def quasimetric_constant(space: FiniteDistanceSpace):
    """Least C with d(x,z) <= C (d(x,y) + d(y,z)); returns (C, (x, y, z))."""
    return _triple_constant(space, _kernels.SUM)


def weak_ultrametric_constant(space: FiniteDistanceSpace):
    """Least C' with d(x,z) <= C' max(d(x,y), d(y,z)); returns (C', (x, y, z))."""
    return _triple_constant(space, _kernels.MAX)


def pair_ratio_max(num: np.ndarray, den: np.ndarray):
    """max over i < j of num/den with the 0/0 and x/0 conventions above."""
    n = num.shape[0]
    if n < 2:
        return 1.0, None
    iu, ju = np.triu_indices(n, 1)
    a = num[iu, ju]
    b = den[iu, ju]
    ratio = np.full(a.shape, -1.0)
    pos = b > 0
    np.divide(a, b, out=ratio, where=pos)
    ratio[(~pos) & (a > 0)] = np.inf
    k = int(np.argmax(ratio))
    if ratio[k] < 0:
        return 1.0, None
    return max(float(ratio[k]), 1.0), (int(iu[k]), int(ju[k]))


def almost_metric_constant(space: FiniteDistanceSpace, rho: np.ndarray | None = None):
    """Least C with d(w_0, w_l) <= C * (sum of steps) over all chains, i.e.
    max of d / rho over pairs; returns (C, (x, y))."""
    if rho is None:
        rho = chain_metric(space).space.dist
    return pair_ratio_max(space.dist, rho)


def almost_ultrametric_constant(space: FiniteDistanceSpace, sigma: np.ndarray | None = None):
    """Chain-max analogue of :func:`almost_metric_constant` (max of d / sigma)."""
    if sigma is None:
        sigma = chain_ultrametric(space).space.dist
    return pair_ratio_max(space.dist, sigma)


def find_triangle_violation(space: FiniteDistanceSpace, tol: float | None = None):
    """First (x, y, z) with d(x,z) > d(x,y) + d(y,z) + tol, else None."""
    tol = space.tol if tol is None else tol
    d = space.dist
    for x in range(space.n):
        bad = d[x, None, :] > d[x, :, None] + d + tol
        if bad.any():
            y, z = divmod(int(np.argmax(bad)), space.n)
            return x, y, z
    return None


def is_semimetric(space: FiniteDistanceSpace, tol: float | None = None) -> bool:
    return find_triangle_violation(space, tol) is None


@dataclass(frozen=True)
class PropertyReport:
    C_quasi: float
    C_weak_ultra: float
    C_almost_metric: float
    C_almost_ultra: float
    is_metric: bool
    is_ultrametric: bool
    witnesses: dict

    def to_dict(self) -> dict:
        def num(v):
            return "inf" if v == math.inf else v

        return {
            "C_quasi": num(self.C_quasi),
            "C_weak_ultra": num(self.C_weak_ultra),
            "C_almost_metric": num(self.C_almost_metric),
            "C_almost_ultra": num(self.C_almost_ultra),
            "is_metric": self.is_metric,
            "is_ultrametric": self.is_ultrametric,
            "witnesses": {k: (list(v) if v is not None else None) for k, v in self.witnesses.items()},
        }


def classify(space: FiniteDistanceSpace) -> PropertyReport:
    cq, wq = quasimetric_constant(space)
    cu, wu = weak_ultrametric_constant(space)
    cam, wam = almost_metric_constant(space)
    cau, wau = almost_ultrametric_constant(space)
    tol = space.tol
    return PropertyReport(
        C_quasi=cq,
        C_weak_ultra=cu,
        C_almost_metric=cam,
        C_almost_ultra=cau,
        is_metric=cq <= 1 + tol,
        is_ultrametric=cu <= 1 + tol,
        witnesses={"C_quasi": wq, "C_weak_ultra": wu, "C_almost_metric": wam, "C_almost_ultra": wau},
    )
