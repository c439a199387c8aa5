"""Benchmark the subset-enumeration kernels: numpy vs numba.

Times the conflict-free / admissible / maximality kernels over random attack
relations at growing framework sizes.  The numba path is warmed once so the
numbers exclude compilation.

Usage: python3 benchmarks/bench_kernels.py [--sizes 12,14,16,18] [--density 0.3]
"""

import argparse
import time

import numpy as np

from akgraph import _kernels as K


def random_attacks(rng, n, density):
    pairs = [(i, j) for i in range(n) for j in range(n)]
    take = rng.random(len(pairs)) < density
    src = np.asarray([a for (a, _), t in zip(pairs, take) if t], dtype=np.int64)
    dst = np.asarray([b for (_, b), t in zip(pairs, take) if t], dtype=np.int64)
    return src, dst


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_size(n, density, repeats, rng):
    src, dst = random_attacks(rng, n, density)
    masks = np.zeros(n, dtype=np.int64)
    for a, b in zip(src, dst):
        masks[a] |= np.int64(1) << np.int64(b)
    cf = K._cf_flags_np(n, src, dst)

    rows = []
    variants = [
        ("conflict_free", lambda: K._cf_flags_np(n, src, dst),
         lambda: K._cf_flags_nb(n, src, dst)),
        ("or_members", lambda: K._or_members_np(n, masks),
         lambda: K._or_members_nb(n, masks)),
        ("maximal", lambda: K._maximal_np(cf, n),
         lambda: K._maximal_nb(cf.copy(), n)),
    ]
    for name, np_fn, nb_fn in variants:
        t_np = best_of(np_fn, repeats)
        if K.HAS_NUMBA:
            nb_fn()   # warm-up / compile
            t_nb = best_of(nb_fn, repeats)
            rows.append((n, name, t_np, t_nb, t_np / t_nb))
        else:
            rows.append((n, name, t_np, None, None))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="12,14,16,18",
                    help="comma-separated framework sizes")
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1234)
    args = ap.parse_args()

    print("numba available: %s" % K.HAS_NUMBA)
    rng = np.random.default_rng(args.seed)
    header = "%4s  %-14s  %10s  %10s  %8s" % ("n", "kernel", "numpy [s]",
                                              "numba [s]", "speedup")
    print(header)
    print("-" * len(header))
    for n in (int(s) for s in args.sizes.split(",") if s):
        for n_, name, t_np, t_nb, ratio in bench_size(
                n, args.density, args.repeats, rng):
            if t_nb is None:
                print("%4d  %-14s  %10.5f  %10s  %8s" % (n_, name, t_np, "-", "-"))
            else:
                print("%4d  %-14s  %10.5f  %10.5f  %7.2fx"
                      % (n_, name, t_np, t_nb, ratio))


if __name__ == "__main__":
    main()
