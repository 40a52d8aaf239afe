"""Seeded random spaces and maps for fuzzing and benchmarks."""

from __future__ import annotations

import numpy as np

from .constructions import chain_metric, chain_ultrametric
from .core import FiniteDistanceSpace, PointCloud, cloud_to_space


def rng_for(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_distance(n: int, seed=0, low: float = 0.05, high: float = 1.0) -> FiniteDistanceSpace:
    """Symmetric matrix with i.i.d. off-diagonal entries; usually not a metric."""
    rng = rng_for(seed)
    upper = np.triu(rng.uniform(low, high, size=(n, n)), 1)
    return FiniteDistanceSpace(upper + upper.T)


def random_spiky_distance(n: int, seed=0) -> FiniteDistanceSpace:
    """Log-uniform entries spanning several decades, to stress the constants."""
    rng = rng_for(seed)
    upper = np.triu(10.0 ** rng.uniform(-2, 1, size=(n, n)), 1)
    return FiniteDistanceSpace(upper + upper.T)


def random_metric(n: int, seed=0) -> FiniteDistanceSpace:
    return chain_metric(random_distance(n, seed)).space


def random_ultrametric(n: int, seed=0) -> FiniteDistanceSpace:
    return chain_ultrametric(random_distance(n, seed)).space


def random_cloud(n: int, dim: int = 2, p: float = 2.0, seed=0) -> PointCloud:
    return PointCloud(rng_for(seed).uniform(-1, 1, size=(n, dim)), p)


def random_euclidean(n: int, dim: int = 2, seed=0) -> FiniteDistanceSpace:
    return cloud_to_space(random_cloud(n, dim, 2.0, seed))


def random_assignment(n_from: int, n_to: int, seed=0) -> tuple[int, ...]:
    return tuple(int(i) for i in rng_for(seed).integers(0, n_to, size=n_from))
