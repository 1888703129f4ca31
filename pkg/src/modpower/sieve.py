"""Block-parallel evaluation of counting functions over 1..N."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from . import _rules as R
from ._jit import resolve_backend
from .census import FUNCTIONS, FunctionId, max_order_count
from .errors import UnsupportedFunctionError
from .factor import SpfTable, build_spf_table

#: h has no closed form; sieving it means one brute-force count per n
H_SIEVE_LIMIT = 20000

#: series that are not census functions but are summed like them
EXTRA_SERIES = {"n_minus_m": R.N_MINUS_HALF_PERIOD, "kernel_succ": R.KERNEL_SUCC}


def sieve_code(fid) -> int | None:
    if isinstance(fid, str) and fid in EXTRA_SERIES:
        return EXTRA_SERIES[fid]
    return FUNCTIONS[FunctionId(fid)].sieve_code


def series_name(fid) -> str:
    if isinstance(fid, str) and fid in EXTRA_SERIES:
        return fid
    return FunctionId(fid).value


def block_bounds(N: int, blocks: int) -> list[tuple[int, int]]:
    """Split [1, N] into ``blocks`` contiguous half-open ranges [lo, hi)."""
    blocks = max(1, min(blocks, N))
    edges = [1 + (N * i) // blocks for i in range(blocks + 1)]
    return [(lo, hi) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def iter_blocks(fid, N: int, threads: int = 1, blocks: int | None = None,
                table: SpfTable | None = None, backend: str | None = None):
    """Yield ``(lo, values)`` for consecutive blocks covering 1..N, in order."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    code = sieve_code(fid)
    if code is None:
        if N > H_SIEVE_LIMIT:
            raise UnsupportedFunctionError(
                f"{series_name(fid)} has no closed form; sieving is limited to N <= {H_SIEVE_LIMIT}")
        yield 1, np.array([max_order_count(n, backend=backend) for n in range(1, N + 1)], dtype=np.int64)
        return
    backend = resolve_backend(backend)
    if table is None or table.limit < N:
        table = build_spf_table(max(N, 2), backend=backend)
    spf = table.spf
    primes = table.primes() if backend == "numpy" else None
    bounds = block_bounds(N, blocks if blocks is not None else max(1, threads))

    def run(b):
        return _kernels.function_values(code, spf, b[0], b[1], backend, primes)

    if threads <= 1:
        for b in bounds:
            yield b[0], run(b)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for b, vals in zip(bounds, pool.map(run, bounds)):
            yield b[0], vals


def sieve_function_values(fid, N: int, threads: int = 1, blocks: int | None = None,
                          table: SpfTable | None = None, backend: str | None = None) -> np.ndarray:
    """Array whose entry ``i`` is f(i + 1) for i < N."""
    return np.concatenate([v for _, v in iter_blocks(fid, N, threads, blocks, table, backend)])
