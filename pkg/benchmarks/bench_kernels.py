"""Benchmark the two table backends on identical inputs.

The hot kernel builds, for a k-vertex induced subdigraph, the table mapping
every odd vertex-subset mask to the bitmask of feasible dipath ends from
local vertex 0.  The compiled-loop backend and the vectorized fallback are
timed on the same random inputs; the drivers built on top (spanning and
longest dicycle) are timed with whichever backend is active.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 12,16,20 --repeats 7
    python3 benchmarks/bench_kernels.py --family   # k=3 oracle feasibility
"""

import argparse
import random
import statistics
import time

import numpy as np

from dicyclepair import kernels
from dicyclepair.generators import build_bn, random_digraph
from dicyclepair.kernels import _numpy

try:
    from dicyclepair.kernels import _numba
    HAS_NUMBA = True
except ImportError:
    _numba = None
    HAS_NUMBA = False


def random_local(rng, k, p):
    rows = np.zeros(k, dtype=np.int64)
    for u in range(k):
        row = 0
        for v in range(k):
            if u != v and rng.random() < p:
                row |= 1 << v
        rows[u] = row
    return rows


def time_one(fn, arg, repeats):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def bench_tables(sizes, repeats, density, seed):
    rng = random.Random(seed)
    if HAS_NUMBA:
        _numba.ham_path_table(random_local(rng, 4, 0.5))  # compile once
    print(f"table construction, density {density}, median of {repeats}")
    print(f"{'k':>4} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    for k in sizes:
        local_out = random_local(rng, k, density)
        t_np = time_one(_numpy.ham_path_table, local_out, repeats)
        if HAS_NUMBA:
            t_nb = time_one(_numba.ham_path_table, local_out, repeats)
            ratio = t_np / t_nb if t_nb > 0 else float("inf")
            print(f"{k:>4} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {ratio:>8.1f}x")
        else:
            print(f"{k:>4} {t_np * 1e3:>12.3f} {'-':>12} {'-':>9}")
        tab_np = _numpy.ham_path_table(local_out)
        if HAS_NUMBA:
            tab_nb = _numba.ham_path_table(local_out)
            assert np.array_equal(np.asarray(tab_np), np.asarray(tab_nb))


def bench_drivers(repeats, seed):
    rng = random.Random(seed)
    print(f"\ndrivers, active backend = {kernels.backend()}")
    print(f"{'case':>24} {'median (ms)':>12}")
    for n in (12, 16, 20):
        d = build_bn(n)
        t = time_one(lambda nn: kernels.longest_dicycle(d.out_masks, nn), n, repeats)
        print(f"{'longest_dicycle bn n=' + str(n):>24} {t * 1e3:>12.3f}")
    for n in (14, 18):
        d = random_digraph(n, 0.5, rng)
        t = time_one(lambda nn: kernels.longest_dicycle(d.out_masks, nn), n, repeats)
        print(f"{'longest_dicycle p.5 n=' + str(n):>24} {t * 1e3:>12.3f}")


def bench_family(seed, budget_seconds):
    """How large can n get before the k=3 exact family search stops being
    interactive?

    SAT on dense digraphs is found almost immediately, so the boundary is
    the UNSAT exhaustion.  On the two-sided tight family with even n = 2m,
    the parts (m-1, m-2, 3) each fit inside one side but cannot be packed
    jointly, so the search must exhaust every split.
    """
    from dicyclepair.generators import random_dense
    from dicyclepair.solver import oracle_family

    rng = random.Random(seed)
    print(f"\nk=3 family oracle, W=V, budget {budget_seconds}s per n")
    print(f"{'n':>4} {'parts':>12} {'verdict':>8} {'seconds':>9} {'sets':>10}")
    for n in range(10, 23, 2):
        m = n // 2
        parts = (m - 1, m - 2, 3)
        d = build_bn(n)
        w = frozenset(range(n))
        t0 = time.perf_counter()
        out = oracle_family(d, w, parts, budget=500_000_000)
        dt = time.perf_counter() - t0
        print(f"{n:>4} {str(parts):>12} {out.verdict.value:>8} {dt:>9.2f} "
              f"{out.oracle_stats.get('sets', 0):>10}")
        if dt > budget_seconds:
            print(f"  stopping: n={n} exceeded the {budget_seconds}s budget")
            break
    # the easy direction for contrast: dense SAT instances are immediate
    inst = random_dense(16, seed=rng.getrandbits(32), w_size=16,
                        partition=(3, 13))
    t0 = time.perf_counter()
    out = oracle_family(inst.d, inst.w, (3, 3, 10), budget=500_000_000)
    dt = time.perf_counter() - t0
    print(f"dense n=16 parts (3,3,10): {out.verdict.value} in {dt:.3f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,12,14,16,18",
                    help="comma-separated table sizes k")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--density", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", action="store_true",
                    help="also probe the exact k=3 family search boundary")
    ap.add_argument("--family-budget", type=float, default=10.0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if any(k > kernels.KMAX for k in sizes):
        ap.error(f"sizes above the kernel cap {kernels.KMAX}")
    bench_tables(sizes, args.repeats, args.density, args.seed)
    bench_drivers(args.repeats, args.seed)
    if args.family:
        bench_family(args.seed, args.family_budget)


if __name__ == "__main__":
    main()
