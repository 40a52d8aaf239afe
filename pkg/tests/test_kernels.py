"""Both kernel backends must agree bit for bit."""

import numpy as np
import pytest

from metrikit import _kernels as K
from metrikit.generators import random_distance, random_spiky_distance

pytestmark = pytest.mark.skipif(not K.NUMBA_AVAILABLE, reason="numba missing")


def _spaces():
    for seed in range(25):
        n = 1 + seed % 9
        yield random_distance(n, seed).dist
        yield random_spiky_distance(n, seed + 100).dist
    semi = random_distance(6, 7).dist.copy()
    semi[0, 3] = semi[3, 0] = 0.0
    semi[1, 2] = semi[2, 1] = 0.0
    yield semi
    yield np.zeros((4, 4))


@pytest.mark.parametrize("mode", [K.SUM, K.MAX])
def test_closure_backends_identical(mode):
    for d in _spaces():
        a, pa = K.closure_numpy(d, mode)
        b, pb = K.closure_numba(d, mode)
        np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(pa, pb)


@pytest.mark.parametrize("mode", [K.SUM, K.MAX])
def test_triple_scan_backends_identical(mode):
    for d in _spaces():
        assert K.triple_ratio_max_numpy(d, mode) == K.triple_ratio_max_numba(d, mode)


def test_subset_dp_backends_identical():
    for seed in range(6):
        d = random_distance(1 + seed * 2, seed).dist
        da = K.subset_diameters_numpy(d)
        db = K.subset_diameters_numba(d)
        np.testing.assert_array_equal(da, db)
        for alpha, delta in [(0.6, 0.1), (1.0, 0.3), (2.0, 0.05)]:
            cost = np.maximum(da, delta) ** alpha
            cost[0] = 0.0
            for x, y in zip(K.partition_dp_numpy(cost, 1e-12), K.partition_dp_numba(cost, 1e-12)):
                np.testing.assert_array_equal(x, y)


def test_subset_diameters_match_definition():
    d = random_distance(7, 3).dist
    diam = K.subset_diameters(d)
    for mask in range(1 << 7):
        idx = [i for i in range(7) if mask >> i & 1]
        want = d[np.ix_(idx, idx)].max() if len(idx) > 1 else 0.0
        assert diam[mask] == want


def test_dispatch_reports_backend():
    assert K.BACKEND in ("numba", "numpy")
