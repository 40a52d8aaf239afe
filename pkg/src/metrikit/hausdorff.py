"""Hausdorff content of finite point sets.

Covers of a finite set E can always be shrunk to partitions of E without
raising any block diameter, so content is a minimum over set partitions of
sum(max(diam B, delta) ** alpha).  ``delta`` is a resolution floor: with
delta = 0 every finite set has content 0 (all singletons), which is what the
plain definition gives; delta > 0 makes finite samples informative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import FiniteDistanceSpace, PointCloud, check_indices, diameter
from .properties import find_triangle_violation

EXACT_THRESHOLD = 14


@dataclass(frozen=True)
class ContentQuery:
    alpha: float
    delta: float = 0.0
    subset: tuple[int, ...] | None = None

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.delta >= 0:
            raise ValueError(f"delta must be nonnegative, got {self.delta}")


@dataclass(frozen=True)
class ContentResult:
    value: float
    partition: tuple[tuple[int, ...], ...]
    exact: bool
    lower_bound: float = 0.0
    method: str = ""
    metric_input: bool = True
    candidates: dict = field(default_factory=dict)

    def to_dict(self, labels=None) -> dict:
        out = {
            "value": self.value,
            "exact": self.exact,
            "lower_bound": self.lower_bound,
            "method": self.method,
            "metric_input": self.metric_input,
            "partition": [list(b) for b in self.partition],
        }
        if labels is not None:
            out["partition_labels"] = [[labels[i] for i in b] for b in self.partition]
        return out


def block_cost(space: FiniteDistanceSpace, block, alpha: float, delta: float) -> float:
    return max(diameter(space, block), delta) ** alpha


def partition_cost(space, partition, alpha, delta) -> float:
    return math.fsum(block_cost(space, b, alpha, delta) for b in partition)


def _canonical(partition) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in partition))


def _mask_members(mask: int, idx) -> tuple[int, ...]:
    return tuple(idx[b] for b in range(len(idx)) if mask >> b & 1)


@dataclass(frozen=True, eq=False)
class ContentTable:
    """Exact content of every subset of a small index set, from one subset DP."""

    idx: tuple[int, ...]
    alpha: float
    delta: float
    values: np.ndarray
    choice: np.ndarray

    def mask(self, subset) -> int:
        pos = {v: k for k, v in enumerate(self.idx)}
        return sum(1 << pos[i] for i in subset)

    def partition(self, mask: int) -> tuple[tuple[int, ...], ...]:
        blocks = []
        while mask:
            b = int(self.choice[mask])
            blocks.append(_mask_members(b, self.idx))
            mask ^= b
        return _canonical(blocks)

    def value(self, subset) -> float:
        return float(self.values[self.mask(subset)])


def content_table(space: FiniteDistanceSpace, subset, alpha: float, delta: float) -> ContentTable:
    idx = tuple(check_indices(space, subset))
    if len(idx) > 24:
        raise ValueError("exact subset search is limited to 24 points")
    sub = space.dist[np.ix_(idx, idx)]
    diam = _kernels.subset_diameters(sub)
    cost = np.maximum(diam, delta) ** alpha
    cost[0] = 0.0
    f, _, choice = _kernels.partition_dp(cost, space.tol)
    return ContentTable(idx, alpha, delta, f, choice)


def greedy_partition(space: FiniteDistanceSpace, idx, alpha: float, delta: float):
    """Agglomerate from singletons, always taking the merge with the largest
    cost decrease, until no merge lowers the cost."""
    blocks = [[i] for i in idx]
    costs = [delta**alpha for _ in idx]
    while len(blocks) > 1:
        best_gain, best_pair = 0.0, None
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                merged = block_cost(space, blocks[a] + blocks[b], alpha, delta)
                gain = costs[a] + costs[b] - merged
                if gain > best_gain + space.tol:
                    best_gain, best_pair = gain, (a, b, merged)
        if best_pair is None:
            break
        a, b, merged = best_pair
        blocks[a] = blocks[a] + blocks[b]
        costs[a] = merged
        del blocks[b], costs[b]
    return _canonical(blocks)


def interval_partition(coords: np.ndarray, idx, alpha: float, delta: float):
    """Best partition of a 1-d point set into runs of consecutive points."""
    order = sorted(range(len(idx)), key=lambda k: (coords[k], idx[k]))
    x = [float(coords[k]) for k in order]
    m = len(x)
    best = [0.0] + [math.inf] * m
    cut = [0] * (m + 1)
    for j in range(1, m + 1):
        for i in range(j):
            c = best[i] + max(x[j - 1] - x[i], delta) ** alpha
            if c < best[j]:
                best[j], cut[j] = c, i
    blocks = []
    j = m
    while j > 0:
        i = cut[j]
        blocks.append([idx[order[k]] for k in range(i, j)])
        j = i
    return _canonical(blocks)


def content(
    space: FiniteDistanceSpace,
    query: ContentQuery,
    exact_threshold: int = EXACT_THRESHOLD,
    cloud: PointCloud | None = None,
) -> ContentResult:
    """Minimum of sum(max(diam B, delta)^alpha) over partitions of the subset.

    Exact below ``exact_threshold`` points; above it the best of the greedy
    merge, the single block and (for 1-d ``cloud``) the interval DP is an
    upper bound with ``exact=False``.
    """
    idx = list(range(space.n)) if query.subset is None else check_indices(space, query.subset)
    alpha, delta = query.alpha, query.delta
    metric = find_triangle_violation(space) is None
    if not idx:
        return ContentResult(0.0, (), True, 0.0, "empty", metric)
    if delta == 0:
        singles = tuple((i,) for i in idx)
        return ContentResult(0.0, singles, True, 0.0, "singletons", metric)

    if len(idx) <= exact_threshold:
        table = content_table(space, idx, alpha, delta)
        full = (1 << len(idx)) - 1
        part = table.partition(full)
        value = partition_cost(space, part, alpha, delta)
        return ContentResult(value, part, True, value, "exact", metric)

    candidates = {
        "single": _canonical([idx]),
        "greedy": greedy_partition(space, idx, alpha, delta),
    }
    if cloud is not None and cloud.dim == 1:
        candidates["interval"] = interval_partition(cloud.points[idx, 0], idx, alpha, delta)
    scored = {k: partition_cost(space, p, alpha, delta) for k, p in candidates.items()}
    # fewer blocks first among near-ties, mirroring the exact search
    name = min(scored, key=lambda k: (scored[k] - space.tol > min(scored.values()), len(candidates[k]), scored[k]))
    lower = delta**alpha if diameter(space, idx) > delta else scored["single"]
    return ContentResult(scored[name], candidates[name], False, min(lower, scored[name]), name, metric, scored)


def content_upper_via_single(space: FiniteDistanceSpace, subset, alpha: float) -> float:
    idx = check_indices(space, subset)
    if not idx:
        raise ValueError("empty point set")
    return diameter(space, idx) ** alpha


@dataclass(frozen=True)
class TheoremCheck:
    holds: bool
    lhs: float
    rhs: float
    detail: str = ""


def _require_small(n, exact_threshold):
    if n > exact_threshold:
        raise ValueError(f"{n} points exceed the exact threshold {exact_threshold}; heuristic values cannot test an inequality")


def check_subadditivity(space, e, f, alpha: float, delta: float, exact_threshold: int = EXACT_THRESHOLD) -> list[TheoremCheck]:
    """content(E u F) <= content(E) + content(F), plus monotonicity
    content(E) <= content(E u F) and content(F) <= content(E u F)."""
    e = check_indices(space, e)
    f = check_indices(space, f)
    if not e or not f:
        raise ValueError("both sets must be nonempty")
    union = sorted(set(e) | set(f))
    _require_small(len(union), exact_threshold)
    table = content_table(space, union, alpha, delta)
    ce, cf, cu = table.value(e), table.value(f), table.value(union)
    tol = space.tol
    return [
        TheoremCheck(cu <= ce + cf + tol, cu, ce + cf, "subadditivity"),
        TheoremCheck(ce <= cu + tol, ce, cu, "monotone E"),
        TheoremCheck(cf <= cu + tol, cf, cu, "monotone F"),
    ]


def check_lipschitz_scaling(fmap, subset, alpha: float, delta: float, exact_threshold: int = EXACT_THRESHOLD) -> TheoremCheck:
    """content of f(E) at floor L*delta <= L^alpha * content of E at floor delta."""
    from .lipschitz import lipschitz_constant

    idx = check_indices(fmap.domain, subset)
    if not idx:
        raise ValueError("empty point set")
    _require_small(len(idx), exact_threshold)
    L = lipschitz_constant(fmap)
    if not L.bounded:
        raise ValueError("map has no finite Lipschitz constant")
    image = fmap.image(idx)
    src = content(fmap.domain, ContentQuery(alpha, delta, tuple(idx)), exact_threshold).value
    img = content(fmap.codomain, ContentQuery(alpha, L.value * delta, tuple(image)), exact_threshold).value
    rhs = L.value**alpha * src
    return TheoremCheck(img <= rhs * (1 + 1e-12) + fmap.domain.tol, img, rhs, f"L={L.value}")


def alpha_sweep(space, subset, delta: float, alphas, exact_threshold: int = EXACT_THRESHOLD, cloud=None) -> list[tuple[float, float, bool]]:
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("empty alpha grid")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alpha grid must be increasing")
    sub = None if subset is None else tuple(subset)
    out = []
    for a in alphas:
        r = content(space, ContentQuery(a, delta, sub), exact_threshold, cloud)
        out.append((a, r.value, r.exact))
    return out
