"""Prime sieving, factorization and evaluation of multiplicative functions."""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import prod

import numpy as np

from . import _kernels
from .errors import ArithmeticOverflowError, LimitExceededError

#: spf entries are uint32, so no table can exceed this limit
SPF_HARD_LIMIT = 2**32 - 1
DEFAULT_SIEVE_LIMIT = 10**8
SIEVE_LIMIT_ENV = "MODPOWER_SIEVE_LIMIT"

TRIAL_DIVISION_MAX = 2**63 - 1
#: widest exact integer a multiplicative evaluation may return (signed 128-bit)
MAX_EXACT = 2**127 - 1


def sieve_limit(override: int | None = None) -> int:
    """Largest sieve size allowed; explicit override beats the environment beats the default."""
    if override is not None:
        limit = int(override)
    else:
        raw = os.environ.get(SIEVE_LIMIT_ENV)
        limit = int(float(raw)) if raw else DEFAULT_SIEVE_LIMIT
    return min(limit, SPF_HARD_LIMIT)


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if prod(p**e for p, e in self.factors) != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")
        ps = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise ValueError("primes must be strictly increasing")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __int__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class SpfTable:
    """Smallest prime factor of every i in [2, limit]; immutable once built."""

    limit: int
    spf: np.ndarray

    def __post_init__(self):
        self.spf.setflags(write=False)

    def __getitem__(self, i: int) -> int:
        if not 2 <= i <= self.limit:
            raise IndexError(f"{i} outside [2, {self.limit}]")
        return int(self.spf[i])

    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1, dtype=np.int64)
        return idx[2:][self.spf[2:] == idx[2:]]


def build_spf_table(N: int, max_limit: int | None = None, backend: str | None = None) -> SpfTable:
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    cap = sieve_limit(max_limit)
    if N > cap:
        raise LimitExceededError(f"sieve limit {N} exceeds budget {cap} (set {SIEVE_LIMIT_ENV} to raise it)")
    return SpfTable(N, _kernels.spf_sieve(int(N), backend))


def primes_up_to(P: int, max_limit: int | None = None, backend: str | None = None) -> np.ndarray:
    if P < 2:
        raise ValueError(f"P must be at least 2, got {P}")
    cap = sieve_limit(max_limit)
    if P > cap:
        raise LimitExceededError(f"prime bound {P} exceeds budget {cap} (set {SIEVE_LIMIT_ENV} to raise it)")
    return np.flatnonzero(_kernels.prime_mask(int(P), backend)).astype(np.int64)


def _trial_division(n: int) -> list[tuple[int, int]]:
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d, step = 5, 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def factorize(n: int, table: SpfTable | None = None) -> FactoredInteger:
    """Factor ``n``; uses ``table`` when it covers n, trial division otherwise."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if table is not None and n <= table.limit:
        factors = []
        m = n
        while m > 1:
            p = int(table.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return FactoredInteger(n, tuple(factors))
    if n > TRIAL_DIVISION_MAX:
        raise ValueError(f"{n} exceeds the trial-division range 2**63 - 1")
    return FactoredInteger(n, tuple(_trial_division(n)))


def as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def eval_multiplicative(rule, n) -> int:
    """Product of ``rule(p, e)`` over the prime powers of ``n`` (1 for n = 1).

    Raises ArithmeticOverflowError when the exact product exceeds MAX_EXACT.
    """
    value = 1
    for p, e in as_factored(n).factors:
        value *= rule(p, e)
        if value > MAX_EXACT:
            raise ArithmeticOverflowError(f"multiplicative value at n={int(n)} exceeds 2**127 - 1")
    return value


def totient(n) -> int:
    return eval_multiplicative(lambda p, e: (p - 1) * p ** (e - 1), n)


def omega_kernel(n) -> tuple[int, int]:
    """Number of distinct prime factors and the square-free kernel."""
    f = as_factored(n)
    return len(f.factors), prod(f.primes)

