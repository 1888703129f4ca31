"""Exact partial sums of the counting functions and their leading-order asymptotes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .census import FunctionId
from .errors import NoKnownAsymptoteError
from .factor import build_spf_table
from .sieve import iter_blocks, series_name, sieve_function_values  # noqa: F401  (re-export)

#: ids whose partial sums have a known leading term, and its shape
_ASYMPTOTES = {
    "phi": ("three_over_pi_sq", "N^2"),
    "idem2omega": ("six_over_pi_sq", "N log N"),
    "a": ("A", "N^2"),
    "b": ("B", "N^2"),
    "c": ("C", "N^2"),
    "m": (None, "N^2/2"),
    "n_minus_m": (None, "3/8 N^2/log N"),
    "g": ("Atilde", "N^2/log N"),
}

#: exact rationals for the 1/kappa sums up to this N, compensated floats above
KERNEL_EXACT_LIMIT = 10**4


@dataclass(frozen=True)
class SummatoryRow:
    checkpoint_N: int
    exact_sum: int
    predicted: float | None
    ratio: float | None


def has_asymptote(fid) -> bool:
    return series_name(fid) in _ASYMPTOTES


def predicted_asymptote(fid, N: int) -> float:
    """Leading-order prediction for the sum of ``fid`` over 1..N."""
    from .constants import constant_value

    name = series_name(fid)
    if name not in _ASYMPTOTES:
        raise NoKnownAsymptoteError(f"no leading-order asymptote is known for the partial sums of {name}")
    if N < 3:
        raise ValueError(f"N must be at least 3, got {N}")
    const, shape = _ASYMPTOTES[name]
    k = float(constant_value(const)) if const else 1.0
    N = float(N)
    if shape == "N^2":
        return k * N * N
    if shape == "N log N":
        return k * N * math.log(N)
    if shape == "N^2/2":
        return N * N / 2
    if shape == "3/8 N^2/log N":
        return 0.375 * N * N / math.log(N)
    return k * N * N / math.log(N)


def default_checkpoints(N: int) -> list[int]:
    cps = [10**k for k in range(1, len(str(N))) if 10**k <= N]
    if not cps or cps[-1] != N:
        cps.append(N)
    return cps


def summatory_table(fid, N: int, checkpoints=None, threads: int = 1, blocks: int | None = None,
                    backend: str | None = None) -> list[SummatoryRow]:
    """Exact sums of ``fid`` at each checkpoint in one pass over 1..N."""
    checkpoints = default_checkpoints(N) if checkpoints is None else [int(c) for c in checkpoints]
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if checkpoints and (checkpoints[0] < 10 or checkpoints[-1] > N):
        raise ValueError(f"checkpoints must lie in [10, {N}]")
    known = has_asymptote(fid)
    sums = []
    running = 0
    pending = list(checkpoints)
    for lo, vals in iter_blocks(fid, N, threads, blocks, backend=backend):
        hi = lo + vals.size
        if pending and pending[0] < hi:
            csum = np.cumsum(vals)
            while pending and pending[0] < hi:
                sums.append(running + int(csum[pending.pop(0) - lo]))
        running += int(vals.sum())
    rows = []
    for cp, s in zip(checkpoints, sums):
        if known:
            pred = predicted_asymptote(fid, cp)
            rows.append(SummatoryRow(cp, s, pred, s / pred))
        else:
            rows.append(SummatoryRow(cp, s, None, None))
    return rows


@dataclass(frozen=True)
class KernelRow:
    N: int
    kernel_sum: float
    exact: Fraction | None
    debruijn_ratio: float


def kernel_reciprocal_sum(N: int, exact: bool | None = None, backend: str | None = None):
    """Sum of 1/kappa(n) for n <= N: a Fraction when exact, else a correctly rounded float."""
    kap = sieve_function_values(FunctionId.KAPPA, N, backend=backend)
    if exact is None:
        exact = N <= KERNEL_EXACT_LIMIT
    if not exact:
        return math.fsum((1.0 / kap.astype(np.float64)).tolist())
    # group by kernel; every kernel divides the primorial of primes <= N
    ks, counts = np.unique(kap, return_counts=True)
    primorial = math.prod(int(p) for p in build_spf_table(max(N, 2)).primes()) if N >= 2 else 1
    num = sum(int(c) * (primorial // int(k)) for k, c in zip(ks, counts))
    return Fraction(num, primorial)


def kernel_reciprocal_diagnostics(N: int, checkpoints=None, backend: str | None = None) -> list[KernelRow]:
    """Rows of (N, sum of 1/kappa, log(sum) / sqrt(8 log N / log log N))."""
    if checkpoints is None:
        checkpoints = [c for c in default_checkpoints(N) if c >= 16]
    checkpoints = [int(c) for c in checkpoints]
    if any(c < 16 for c in checkpoints):
        raise ValueError("checkpoints must be at least 16 so that log log N > 0")
    if checkpoints[-1] > N:
        raise ValueError(f"checkpoints must not exceed N={N}")
    kap = sieve_function_values(FunctionId.KAPPA, checkpoints[-1], backend=backend)
    recip = (1.0 / kap.astype(np.float64)).tolist()
    rows = []
    for cp in checkpoints:
        exact = kernel_reciprocal_sum(cp, exact=True, backend=backend) if cp <= KERNEL_EXACT_LIMIT else None
        s = float(exact) if exact is not None else math.fsum(recip[:cp])
        lnN = math.log(cp)
        rows.append(KernelRow(cp, s, exact, math.log(s) / math.sqrt(8 * lnN / math.log(lnN))))
    return rows
