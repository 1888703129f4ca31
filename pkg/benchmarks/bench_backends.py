"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_backends.py [--sieve 10000000] [--values 1000000] [--orbit 3000] [--repeat 3]

The first numba call compiles (or loads the on-disk cache), so each kernel is
warmed up once before timing.  Results are checked for equality across backends.
"""
import argparse
import time

import numpy as np

from modpower import _kernels
from modpower import _rules as R
from modpower._jit import HAVE_NUMBA


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sieve", type=int, default=10**7, help="smallest-prime-factor sieve size")
    ap.add_argument("--values", type=int, default=10**6, help="range for the function-value sieve")
    ap.add_argument("--orbit", type=int, default=3000, help="modulus for the orbit census")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    spf = _kernels.spf_sieve(args.values, "numba")
    primes = np.flatnonzero(_kernels.prime_mask(args.values, "numpy"))
    cases = [
        (f"spf sieve N={args.sieve:.0e}", lambda b: _kernels.spf_sieve(args.sieve, b)),
        (f"tau<=1 values N={args.values:.0e}",
         lambda b: _kernels.function_values(R.TAU_LE1, spf, 1, args.values + 1, b, primes)),
        (f"carmichael values N={args.values:.0e}",
         lambda b: _kernels.function_values(R.CARMICHAEL, spf, 1, args.values + 1, b, primes)),
        (f"primitive roots N={args.values:.0e}",
         lambda b: _kernels.function_values(R.PRIMITIVE_ROOTS, spf, 1, args.values + 1, b, primes)),
        (f"orbit census n={args.orbit}", lambda b: _kernels.orbit_arrays(args.orbit, b)),
    ]
    print(f"{'kernel':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases:
        fn("numba")
        tn, a = best_of(lambda: fn("numba"), args.repeat)
        tp, b = best_of(lambda: fn("numpy"), args.repeat)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:34s} {tn:10.4f} {tp:10.4f} {tp / tn:7.1f}x")


if __name__ == "__main__":
    main()
