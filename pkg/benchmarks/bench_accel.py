#!/usr/bin/env python3
"""Timing comparison of the numba-jitted and pure-numpy lanes.

Runs every hot kernel in dirweight._accel through both lanes on identical
inputs and prints a table of best-of-N wall times plus the speedup.  Run
with the default environment (numba enabled); the numpy column is what
DIRWEIGHT_DISABLE_NUMBA=1 selects at import time.

    python3 benchmarks/bench_accel.py --n 1000000 --repeats 3
"""

import argparse
import time

import numpy as np

from dirweight import _accel


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000, help="table length")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    n = args.n

    rng = np.random.default_rng(0)
    vals = rng.uniform(0.1, 2.0, n + 1)
    small = min(n, 200_000)  # convolution and divisor sums are O(n log n)
    vals_small = vals[: small + 1].copy()
    mu_small = _accel.mobius_table(small)
    b_small = rng.uniform(-1.0, 1.0, small + 1)
    z = 1.5 + 0.7j

    cases = [
        ("mobius_table", (n,)),
        ("gpf_table", (n,)),
        ("spf_table", (n,)),
        ("divisor_count_table", (n,)),
        ("omega_table", (n,)),
        ("big_omega_table", (n,)),
        ("dirichlet_convolve", (vals_small, b_small)),
        ("divisor_sum_table", (vals_small, mu_small.astype(np.float64), 0.5, 2)),
        ("power_sum", (vals, 2, z.real, z.imag)),
    ]

    print(f"n = {n}, repeats = {args.repeats}, numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':24s} {'numpy':>10s} {'numba':>10s} {'speedup':>9s}")
    for name, call_args in cases:
        lanes = _accel.implementations(name)
        if name == "divisor_sum_table":
            numpy_args = (vals_small, mu_small, 0.5, 2)
        else:
            numpy_args = call_args
        t_np = best_of(lanes["numpy"], numpy_args, args.repeats)
        if "numba" in lanes:
            lanes["numba"](*call_args)  # compile outside the timer
            t_nb = best_of(lanes["numba"], call_args, args.repeats)
            print(f"{name:24s} {t_np*1e3:9.2f}ms {t_nb*1e3:9.2f}ms {t_np/t_nb:8.1f}x")
        else:
            print(f"{name:24s} {t_np*1e3:9.2f}ms {'-':>10s} {'-':>9s}")


if __name__ == "__main__":
    main()
