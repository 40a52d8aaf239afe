"""Induced chain metric and chain ultrametric, snowflake transforms, and the
exponent search that turns a quasimetric into an almost-metric."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import DISTANCE, SEMIDISTANCE, FiniteDistanceSpace


@dataclass(frozen=True)
class ChainWitness:
    indices: tuple[int, ...]
    value: float

    @property
    def length(self) -> int:
        return len(self.indices) - 1


@dataclass(frozen=True, eq=False)
class ChainClosure:
    """A closed matrix together with the chains that realise each entry."""

    space: FiniteDistanceSpace
    source: FiniteDistanceSpace
    pred: np.ndarray
    mode: str  # "sum" or "max"

    def chain(self, i: int, j: int) -> tuple[int, ...]:
        if i == j:
            return (i, i)
        path = [j]
        cur = j
        for _ in range(self.space.n):
            cur = int(self.pred[i, cur])
            path.append(cur)
            if cur == i:
                return tuple(reversed(path))
        raise RuntimeError(f"predecessor table has a cycle on ({i},{j})")  # pragma: no cover

    def witness(self, i: int, j: int) -> ChainWitness:
        idx = self.chain(i, j)
        steps = [self.source.dist[a, b] for a, b in zip(idx, idx[1:])]
        value = float(math.fsum(steps)) if self.mode == "sum" else float(max(steps))
        return ChainWitness(idx, value)

    def witness_table(self) -> list[dict]:
        rows = []
        n = self.space.n
        for i in range(n):
            for j in range(i + 1, n):
                w = self.witness(i, j)
                rows.append({
                    "from": self.space.labels[i],
                    "to": self.space.labels[j],
                    "value": float(self.space.dist[i, j]),
                    "original": float(self.source.dist[i, j]),
                    "chain": list(w.indices),
                })
        return rows


def _closed_kind(mat: np.ndarray) -> str:
    off = mat[~np.eye(mat.shape[0], dtype=bool)]
    return SEMIDISTANCE if np.any(off == 0.0) else DISTANCE


def _close(space: FiniteDistanceSpace, mode: str) -> ChainClosure:
    closed, pred = _kernels.closure(space.dist, _kernels.SUM if mode == "sum" else _kernels.MAX)
    out = space.with_matrix(closed, _closed_kind(closed))
    return ChainClosure(out, space, pred, mode)


def chain_metric(space: FiniteDistanceSpace) -> ChainClosure:
    """rho(x, y): least step-sum over chains from x to y (shortest-path closure)."""
    return _close(space, "sum")


def chain_ultrametric(space: FiniteDistanceSpace) -> ChainClosure:
    """sigma(x, y): least largest-step over chains from x to y (bottleneck closure)."""
    return _close(space, "max")


def gauge_pairs(space: FiniteDistanceSpace) -> list[dict]:
    """(d, rho, sigma) for every unordered pair, for comparing against any gauge."""
    rho = chain_metric(space).space.dist
    sigma = chain_ultrametric(space).space.dist
    n = space.n
    return [
        {"i": i, "j": j, "d": float(space.dist[i, j]), "rho": float(rho[i, j]), "sigma": float(sigma[i, j])}
        for i in range(n) for j in range(i + 1, n)
    ]


def snowflake(space: FiniteDistanceSpace, q: float) -> FiniteDistanceSpace:
    if not q > 0:
        raise ValueError(f"snowflake exponent must be positive, got {q}")
    if q == 1:
        return space
    return space.with_matrix(np.power(space.dist, q))


def snowflake_constant_bound(c: float, q: float) -> float:
    """Quasimetric constant guaranteed for d**q when d has constant c."""
    if not c >= 1:
        raise ValueError(f"quasimetric constant must be >= 1, got {c}")
    if not q > 0:
        raise ValueError(f"exponent must be positive, got {q}")
    if q >= 1:
        return 2.0 ** (q - 1) * c**q
    return c**q


@dataclass(frozen=True)
class ExponentSearch:
    feasible: bool
    a: float | None
    constant: float | None
    strategy: str  # "bisection" or "grid-scan"
    evaluations: int

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "a": self.a,
            "achieved_constant": self.constant,
            "strategy": self.strategy,
            "evaluations": self.evaluations,
        }


def find_snowflake_exponent(
    space: FiniteDistanceSpace,
    c_target: float,
    grid_bits: int = 20,
    max_bisections: int = 40,
    samples: int = 32,
) -> ExponentSearch:
    """Largest a = k / 2**grid_bits in (0, 1] with almost-metric constant of
    d**a at most ``c_target``.

    The constant is first sampled at ``samples`` evenly spaced grid points.  If
    it is nondecreasing in a there, bisection on the grid index is used;
    otherwise every grid point is scanned from the top down.
    """
    from .properties import almost_metric_constant

    if not c_target >= 1:
        raise ValueError(f"target constant must be >= 1, got {c_target}")
    if space.kind != DISTANCE:
        raise ValueError("exponent search needs a distance function (no zero off-diagonal entries)")
    top = 1 << grid_bits
    cache: dict[int, float] = {}
    limit = c_target * (1 + 1e-12) + space.tol

    def constant(k: int) -> float:
        if k not in cache:
            cache[k] = almost_metric_constant(snowflake(space, k / top))[0]
        return cache[k]

    def ok(k: int) -> bool:
        return constant(k) <= limit

    step = max(top // samples, 1)
    ks = list(range(step, top + 1, step))
    if ks[-1] != top:
        ks.append(top)
    values = [constant(k) for k in ks]
    monotone = all(b >= a - space.tol for a, b in zip(values, values[1:]))

    if monotone:
        strategy = "bisection"
        if ok(top):
            best = top
        else:
            feasible_samples = [k for k in ks if ok(k)]
            lo = feasible_samples[-1] if feasible_samples else (1 if ok(1) else None)
            if lo is None:
                return ExponentSearch(False, None, None, strategy, len(cache))
            hi = min(k for k in ks if k > lo and not ok(k))
            for _ in range(max_bisections):
                if hi - lo <= 1:
                    break
                mid = (lo + hi) // 2
                if ok(mid):
                    lo = mid
                else:
                    hi = mid
            best = lo
    else:
        strategy = "grid-scan"
        best = next((k for k in range(top, 0, -1) if ok(k)), None)
        if best is None:
            return ExponentSearch(False, None, None, strategy, len(cache))
    return ExponentSearch(True, best / top, constant(best), strategy, len(cache))
