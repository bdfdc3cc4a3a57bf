"""Benchmark the numba kernels against the pure-numpy fallback.

Imports both backends directly (independent of STABLESIM_BACKEND) and times
each hot kernel on a representative workload.  Numba timings exclude the
one-off JIT compilation (a warm-up call runs first).

    python benchmarks/bench_kernels.py --n 100000
"""

import argparse
import time

import numpy as np

from stablesim import _kernels_numpy, kernels
from stablesim.spectral import SpectralMeasure, Sphere

try:
    from stablesim import _kernels_numba
except ImportError:
    _kernels_numba = None


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100_000, help="draws per kernel")
    parser.add_argument("--k", type=int, default=100, help="terms for fixed-length kernels")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    atoms = SpectralMeasure.from_atoms([[1.0, 0.5], [0.5, 1.0]], [0.5, 0.5], Sphere.LINF)
    euclid = SpectralMeasure.from_atoms(np.eye(2), [0.5, 0.5], Sphere.EUCLIDEAN)
    angular = SpectralMeasure.angular("f3")

    workloads = [
        ("max_stable_exact", kernels.direction_table(atoms), (1_000_000,)),
        ("max_stable_fixed_k", kernels.direction_table(atoms), (args.k,)),
        ("stable_sum", kernels.direction_table(angular), (args.k, 1.0)),
        ("doa_sum", kernels.direction_table(euclid), (args.k, float(args.k) ** (-1.0 / 0.75))),
        ("first_hit_index", kernels.direction_table(atoms), (0, 1_000_000)),
    ]

    print(f"{'kernel':<20} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, table, extra in workloads:
        np_fn = getattr(_kernels_numpy, name)
        if name == "first_hit_index":
            np_args = (np.random.default_rng(0), args.n, 2, *table, *extra)
        else:
            np_args = (np.random.default_rng(0), args.n, 2, 0.75, *table, *extra)
        t_np = time_call(np_fn, *np_args, repeat=args.repeat)
        if _kernels_numba is None:
            print(f"{name:<20} {t_np:>10.3f} {'n/a':>10} {'n/a':>8}")
            continue
        nb_fn = getattr(_kernels_numba, name)
        nb_args = (np.random.default_rng(0), *np_args[1:])
        nb_fn(*((np.random.default_rng(0),) + (10,) + nb_args[2:]))  # warm-up JIT
        t_nb = time_call(nb_fn, *nb_args, repeat=args.repeat)
        print(f"{name:<20} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
