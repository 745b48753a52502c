#!/usr/bin/env python3
"""Time the jit kernels against their pure-numpy twins.

The leave-two-out count is the O(n^3) hotspot; the solver kernels are the
O(n^2) per-iteration cost. Run after a warmup pass so jit compilation is
excluded:

    python3 benchmarks/bench_kernels.py --n 500 --d 8 --repeat 3
"""

import argparse
import time

import numpy as np

from corerank import _kernels_numpy
from corerank._backend import set_backend


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=500, help="sample size")
    parser.add_argument("--d", type=int, default=8, help="dimension")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x = rng.normal(size=(args.n, args.d))
    theta = rng.normal(size=args.n)

    jit = set_backend("numba")
    jit.warmup()
    dist = jit.pairwise_distances(x)

    cases = [
        ("pairwise_distances", lambda mod: mod.pairwise_distances(x)),
        ("leave_two_out_counts", lambda mod: mod.leave_two_out_counts(dist)),
        ("pair_softplus_sum", lambda mod: mod.pair_softplus_sum(theta)),
        ("sigmoid_rowsums", lambda mod: mod.sigmoid_rowsums(theta)),
    ]

    print(f"n={args.n} d={args.d} (best of {args.repeat})")
    print(f"{'kernel':<22}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, call in cases:
        t_jit = best_of(lambda: call(jit), args.repeat)
        t_np = best_of(lambda: call(_kernels_numpy), args.repeat)
        print(f"{name:<22}{t_jit * 1e3:>10.2f}ms{t_np * 1e3:>10.2f}ms{t_np / t_jit:>9.1f}x")

    gt_a, eq_a = jit.leave_two_out_counts(dist)
    gt_b, eq_b = _kernels_numpy.leave_two_out_counts(dist)
    assert np.array_equal(gt_a, gt_b) and np.array_equal(eq_a, eq_b)
    print("count kernels agree bitwise across backends")


if __name__ == "__main__":
    main()
