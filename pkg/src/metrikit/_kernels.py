"""Hot loops.

Every kernel exists twice: a numba ``@njit`` version and a numpy version
with identical semantics (same pivot order, same tie-breaks, same float
operations), so both backends return bit-identical arrays.  The numba
versions are used unless numba is missing or ``METRIKIT_DISABLE_NUMBA=1``.
"""

import numpy as np

from ._config import numba_disabled

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"

SUM = 0
MAX = 1


# ---------------------------------------------------------------- numpy path


def closure_numpy(dist, mode):
    """All-pairs chain closure with (min, +) for SUM or (min, max) for MAX.

    Returns the closed matrix and a predecessor table: ``pred[i, j]`` is the
    point visited just before ``j`` on the stored chain from ``i``.
    """
    n = dist.shape[0]
    closed = np.array(dist, dtype=np.float64, copy=True)
    pred = np.repeat(np.arange(n, dtype=np.int64)[:, None], n, axis=1)
    for k in range(n):
        if mode == SUM:
            cand = closed[:, k, None] + closed[None, k, :]
        else:
            cand = np.maximum(closed[:, k, None], closed[None, k, :])
        better = cand < closed
        closed = np.where(better, cand, closed)
        pred = np.where(better, pred[k, None, :], pred)
    return closed, pred


def triple_ratio_max_numpy(dist, mode):
    """Max of d(x,z) / g(d(x,y), d(y,z)) over triples with x != z.

    g is + for SUM and max for MAX.  0/0 is skipped, positive/0 is inf.
    Returns (best, x, y, z); best is -1 when every triple was skipped.  The
    witness is the lexicographically smallest triple attaining the maximum.
    """
    n = dist.shape[0]
    best = -1.0
    wx = wy = wz = -1
    for x in range(n):
        num = np.broadcast_to(dist[x, None, :], (n, n))
        if mode == SUM:
            den = dist[x, :, None] + dist
        else:
            den = np.maximum(dist[x, :, None], dist)
        ratio = np.full((n, n), -1.0)
        pos = den > 0.0
        np.divide(num, den, out=ratio, where=pos)
        ratio[(~pos) & (num > 0.0)] = np.inf
        ratio[:, x] = -1.0
        flat = int(np.argmax(ratio))
        value = ratio.flat[flat]
        if value > best:
            best = float(value)
            wx, wy, wz = x, flat // n, flat % n
    return best, wx, wy, wz


def _submasks_desc(rest):
    bits = [b for b in range(rest.bit_length()) if rest >> b & 1]
    subs = np.zeros(1, dtype=np.int64)
    for b in bits:
        subs = np.concatenate((subs, subs | (1 << b)))
    return np.sort(subs)[::-1]


def subset_diameters_numpy(dist):
    """diam[mask] for every mask over the points of ``dist`` (m <= ~20)."""
    m = dist.shape[0]
    diam = np.zeros(1 << m, dtype=np.float64)
    for h in range(m):
        reach = np.zeros(1 << h, dtype=np.float64)
        for j in range(h):
            reach[1 << j: 1 << (j + 1)] = np.maximum(reach[: 1 << j], dist[h, j])
        lo = diam[: 1 << h]
        diam[1 << h: 1 << (h + 1)] = np.maximum(lo, reach)
    return diam


def partition_dp_numpy(cost, tol):
    """Optimal partition cost for every subset mask.

    f[S] = min over blocks B containing the lowest bit of S of
    cost[B] + f[S \\ B].  Candidates within ``tol`` of the minimum are tied;
    ties go to fewer blocks, then smaller cost, then larger block mask.
    Returns (f, nblocks, choice).
    """
    size = cost.shape[0]
    f = np.zeros(size, dtype=np.float64)
    nb = np.zeros(size, dtype=np.int64)
    choice = np.zeros(size, dtype=np.int64)
    for s in range(1, size):
        low = s & -s
        blocks = _submasks_desc(s ^ low) | low
        cand = cost[blocks] + f[s ^ blocks]
        cnb = nb[s ^ blocks] + 1
        ok = cand <= cand.min() + tol
        fewest = cnb[ok].min()
        ok &= cnb == fewest
        cheapest = cand[ok].min()
        idx = int(np.flatnonzero(ok & (cand == cheapest))[0])
        f[s] = cand[idx]
        nb[s] = cnb[idx]
        choice[s] = blocks[idx]
    return f, nb, choice


# ---------------------------------------------------------------- numba path

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def closure_numba(dist, mode):
        n = dist.shape[0]
        closed = dist.astype(np.float64).copy()
        pred = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                pred[i, j] = i
        for k in range(n):
            for i in range(n):
                dik = closed[i, k]
                for j in range(n):
                    if mode == 0:
                        c = dik + closed[k, j]
                    else:
                        c = max(dik, closed[k, j])
                    if c < closed[i, j]:
                        closed[i, j] = c
                        pred[i, j] = pred[k, j]
        return closed, pred

    @njit(cache=True)
    def triple_ratio_max_numba(dist, mode):
        n = dist.shape[0]
        best = -1.0
        wx = -1
        wy = -1
        wz = -1
        for x in range(n):
            for y in range(n):
                dxy = dist[x, y]
                for z in range(n):
                    if z == x:
                        continue
                    num = dist[x, z]
                    if mode == 0:
                        den = dxy + dist[y, z]
                    else:
                        den = max(dxy, dist[y, z])
                    if den > 0.0:
                        r = num / den
                    elif num > 0.0:
                        r = np.inf
                    else:
                        continue
                    if r > best:
                        best = r
                        wx = x
                        wy = y
                        wz = z
        return best, wx, wy, wz

    @njit(cache=True)
    def subset_diameters_numba(dist):
        m = dist.shape[0]
        diam = np.zeros(1 << m, dtype=np.float64)
        for s in range(1, 1 << m):
            h = 0
            while (s >> (h + 1)) != 0:
                h += 1
            rest = s ^ (1 << h)
            best = diam[rest]
            for j in range(h):
                if (rest >> j) & 1 and dist[h, j] > best:
                    best = dist[h, j]
            diam[s] = best
        return diam

    @njit(cache=True)
    def partition_dp_numba(cost, tol):
        size = cost.shape[0]
        f = np.zeros(size, dtype=np.float64)
        nb = np.zeros(size, dtype=np.int64)
        choice = np.zeros(size, dtype=np.int64)
        for s in range(1, size):
            low = s & -s
            rest = s ^ low
            lowest = np.inf
            t = rest
            while True:
                b = t | low
                c = cost[b] + f[s ^ b]
                if c < lowest:
                    lowest = c
                if t == 0:
                    break
                t = (t - 1) & rest
            fewest = 1 << 62
            t = rest
            while True:
                b = t | low
                c = cost[b] + f[s ^ b]
                if c <= lowest + tol and nb[s ^ b] + 1 < fewest:
                    fewest = nb[s ^ b] + 1
                if t == 0:
                    break
                t = (t - 1) & rest
            cheapest = np.inf
            pick = -1
            t = rest
            while True:
                b = t | low
                c = cost[b] + f[s ^ b]
                if c <= lowest + tol and nb[s ^ b] + 1 == fewest and c < cheapest:
                    cheapest = c
                    pick = b
                if t == 0:
                    break
                t = (t - 1) & rest
            f[s] = cheapest
            nb[s] = fewest
            choice[s] = pick
        return f, nb, choice

else:  # pragma: no cover
    closure_numba = closure_numpy
    triple_ratio_max_numba = triple_ratio_max_numpy
    subset_diameters_numba = subset_diameters_numpy
    partition_dp_numba = partition_dp_numpy


# ---------------------------------------------------------------- dispatch


def closure(dist, mode):
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    if USE_NUMBA:
        return closure_numba(dist, mode)
    return closure_numpy(dist, mode)


def triple_ratio_max(dist, mode):
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    if USE_NUMBA:
        best, x, y, z = triple_ratio_max_numba(dist, mode)
    else:
        best, x, y, z = triple_ratio_max_numpy(dist, mode)
    return float(best), int(x), int(y), int(z)


def subset_diameters(dist):
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    if USE_NUMBA:
        return subset_diameters_numba(dist)
    return subset_diameters_numpy(dist)


def partition_dp(cost, tol):
    cost = np.ascontiguousarray(cost, dtype=np.float64)
    if USE_NUMBA:
        return partition_dp_numba(cost, float(tol))
    return partition_dp_numpy(cost, float(tol))
