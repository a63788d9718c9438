"""Timing comparison of the two eigenvalue-counting backends.

The lattice enumeration (numba-jitted odometer over the ball ||n||^2 <=
cutoff) and the pure-numpy digit-sum dynamic program compute the same
multiplicity table; this script checks they agree and reports wall times
over a grid of (m, cutoff) pairs.  Run from the repo root:

    python3 benchmarks/bench_spectrum.py [--repeats 3]

The enumeration touches all ~(2*sqrt(cutoff)+1)^(m-1) lattice points,
so it wins at small m and loses exponentially as m grows; the DP's
table work is polynomial in m and cutoff and takes over around m = 7.
The numbers here are what justified keeping the DP as a real fallback
rather than a crippled stand-in.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from slcones._kernels import HAVE_NUMBA, _counts_dp, _counts_enum

CASES = [
    (3, 50),
    (3, 200),
    (4, 100),
    (5, 100),
    (7, 60),
    (9, 40),
    (12, 30),
]


def _best_of(fn, repeats: int, *args) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3, help="timed runs per case")
    args = parser.parse_args()

    if HAVE_NUMBA:
        _counts_enum(3, 10)  # pay the jit compile outside the timings
        label = "enum (numba)"
    else:
        label = "enum (python!)"
        print("numba not installed; timing the uncompiled enumeration\n")

    print(f"{'m':>3} {'cutoff':>7} {label:>14} {'dp (numpy)':>12} {'ratio':>8}")
    for m, cutoff in CASES:
        a = _counts_enum(m, cutoff)
        b = _counts_dp(m, cutoff)
        if not np.array_equal(a, b):
            raise SystemExit(f"backend mismatch at m={m}, cutoff={cutoff}")
        t_enum = _best_of(_counts_enum, args.repeats, m, cutoff)
        t_dp = _best_of(_counts_dp, args.repeats, m, cutoff)
        print(
            f"{m:>3} {cutoff:>7} {t_enum:>13.4f}s {t_dp:>11.4f}s "
            f"{t_enum / t_dp:>7.1f}x"
        )
    print(
        "\nratio > 1 means the numpy DP was faster (it takes over as m "
        "grows); tables agree exactly."
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
