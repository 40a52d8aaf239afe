"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import sys
import time

import numpy as np

from metrikit import _kernels as K
from metrikit.generators import random_distance


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(sizes, dp_sizes):
    for n in sizes:
        d = np.ascontiguousarray(random_distance(n, seed=n).dist)
        yield f"closure-sum n={n}", K.closure_numpy, K.closure_numba, (d, K.SUM)
        yield f"closure-max n={n}", K.closure_numpy, K.closure_numba, (d, K.MAX)
        yield f"triple-scan n={n}", K.triple_ratio_max_numpy, K.triple_ratio_max_numba, (d, K.SUM)
    for m in dp_sizes:
        d = np.ascontiguousarray(random_distance(m, seed=m).dist)
        diam = K.subset_diameters_numpy(d)
        cost = np.maximum(diam, 0.05) ** 0.7
        cost[0] = 0.0
        yield f"subset-diam m={m}", K.subset_diameters_numpy, K.subset_diameters_numba, (d,)
        yield f"partition-dp m={m}", K.partition_dp_numpy, K.partition_dp_numba, (cost, 1e-12)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 128])
    ap.add_argument("--dp-sizes", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args(argv)
    if not K.NUMBA_AVAILABLE:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    rows = []
    print(f"{'kernel':<22}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  identical")
    for name, np_fn, nb_fn, call_args in cases(args.sizes, args.dp_sizes):
        nb_fn(*call_args)  # compile outside the timing
        t_np, out_np = best_of(lambda: np_fn(*call_args), args.repeat)
        t_nb, out_nb = best_of(lambda: nb_fn(*call_args), args.repeat)
        ident = same(out_np, out_nb)
        rows.append({"kernel": name, "numpy_s": t_np, "numba_s": t_nb, "speedup": t_np / t_nb, "identical": ident})
        print(f"{name:<22}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x  {ident}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["identical"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
