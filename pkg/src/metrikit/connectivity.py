"""eps-chains, eps-connected components and the critical connectivity threshold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .constructions import chain_ultrametric
from .core import FiniteDistanceSpace, check_indices


class DisjointSet:
    def __init__(self, items: Iterable[int]):
        self.parent = {i: i for i in items}

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller root wins so labels stay the smallest member
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _subset(space, subset):
    idx = list(range(space.n)) if subset is None else check_indices(space, subset)
    if not idx:
        raise ValueError("empty point set")
    return idx


@dataclass(frozen=True)
class ComponentDecomposition:
    epsilon: float
    components: tuple[tuple[int, ...], ...]
    # min distance between the first block (A) and all other blocks (B); None for one block
    separation: float | None

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def split(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        if self.connected:
            return None
        rest = tuple(sorted(i for block in self.components[1:] for i in block))
        return self.components[0], rest


def _tol(space, tol):
    return space.tol if tol is None else tol


def components(space: FiniteDistanceSpace, subset=None, eps: float = 0.0, tol: float | None = None) -> ComponentDecomposition:
    """Classes of points joined by eps-chains inside ``subset`` (steps d <= eps + tol)."""
    if not eps > 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    idx = _subset(space, subset)
    sub = space.dist[np.ix_(idx, idx)]
    ds = DisjointSet(range(len(idx)))
    for a, b in zip(*np.nonzero(np.triu(sub <= eps + _tol(space, tol), 1))):
        ds.union(int(a), int(b))
    blocks: dict[int, list[int]] = {}
    for a in range(len(idx)):
        blocks.setdefault(ds.find(a), []).append(idx[a])
    comps = tuple(tuple(b) for _, b in sorted(blocks.items()))
    separation = None
    if len(comps) > 1:
        a_idx, rest = comps[0], [i for b in comps[1:] for i in b]
        separation = float(space.dist[np.ix_(a_idx, rest)].min())
    return ComponentDecomposition(float(eps), comps, separation)


def is_epsilon_connected(space: FiniteDistanceSpace, subset, eps: float, tol: float | None = None):
    """(True, spanning edges) or (False, (A, B)) where every u in A, v in B has d(u, v) > eps."""
    dec = components(space, subset, eps, tol)
    if dec.connected:
        return True, spanning_edges(space, dec.components[0], eps, tol)
    return False, dec.split()


def spanning_edges(space, block, eps, tol=None) -> list[tuple[int, int]]:
    """A tree of eps-steps spanning ``block``; any two members are joined by its path."""
    block = list(block)
    lim = eps + _tol(space, tol)
    seen = {block[0]}
    frontier = [block[0]]
    edges = []
    while frontier:
        u = frontier.pop(0)
        for v in block:
            if v not in seen and space.dist[u, v] <= lim:
                seen.add(v)
                frontier.append(v)
                edges.append((u, v))
    return edges


def minimum_spanning_tree(space: FiniteDistanceSpace, subset=None) -> list[tuple[int, int, float]]:
    """Prim's algorithm on the complete graph over ``subset``; O(m^2)."""
    idx = _subset(space, subset)
    m = len(idx)
    sub = space.dist[np.ix_(idx, idx)]
    in_tree = np.zeros(m, dtype=bool)
    in_tree[0] = True
    best = sub[0].copy()
    parent = np.zeros(m, dtype=np.int64)
    edges = []
    for _ in range(m - 1):
        cand = np.where(in_tree, np.inf, best)
        v = int(np.argmin(cand))
        edges.append((idx[int(parent[v])], idx[v], float(sub[parent[v], v])))
        in_tree[v] = True
        closer = (~in_tree) & (sub[v] < best)
        best[closer] = sub[v][closer]
        parent[closer] = v
    return edges


@dataclass(frozen=True)
class CriticalEpsilon:
    value: float
    pair: tuple[int, int] | None
    sigma_max: float
    mst_max: float

    def to_dict(self, labels=None) -> dict:
        pair = list(self.pair) if self.pair else None
        out = {"critical_epsilon": self.value, "pair": pair}
        if labels is not None and pair:
            out["labels"] = [labels[i] for i in pair]
        return out


def critical_epsilon(space: FiniteDistanceSpace, subset=None) -> CriticalEpsilon:
    """Least eps making ``subset`` eps-connected.

    Computed as the largest minimum-spanning-tree edge and, independently, as
    the largest chain-ultrametric value on the subspace; the two must agree.
    """
    idx = _subset(space, subset)
    if len(idx) == 1:
        return CriticalEpsilon(0.0, None, 0.0, 0.0)
    edges = minimum_spanning_tree(space, idx)
    u, v, w = max(edges, key=lambda e: e[2])
    sigma = chain_ultrametric(space.subspace(idx)).space.dist
    smax = float(sigma.max())
    if abs(smax - w) > space.tol:
        raise RuntimeError(f"bottleneck routes disagree: sigma {smax} vs MST {w}")  # pragma: no cover
    return CriticalEpsilon(w, (min(u, v), max(u, v)), smax, w)
