"""Brute-force period and transient statistics of power sequences in Z_n.

For x in Z_n the sequence x^0, x^1, x^2, ... is eventually periodic.  The
*period* sigma(x) is the length of the cycle it falls into and the *transient*
tau(x) is the index at which the cycle is first entered.  Nothing here uses a
closed formula: every count is obtained by walking the sequences, which is
what makes this module usable as an oracle for ``census``.

``x^0`` is the residue of 1 mod n, which is 0 in Z_1.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceededError

DEFAULT_BRUTE_BUDGET = 10**6


@dataclass(frozen=True)
class OrbitStats:
    x: int
    sigma: int
    tau: int


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """sigma, tau and the first cycle residue x^tau for every x in Z_n."""

    n: int
    sigma: np.ndarray
    tau: np.ndarray
    tail: np.ndarray

    def stats(self, x: int) -> OrbitStats:
        return OrbitStats(x, int(self.sigma[x]), int(self.tau[x]))

    @property
    def units(self) -> np.ndarray:
        return self.tau == 0


@dataclass(frozen=True)
class OrbitCensus:
    n: int
    counts: dict[tuple[int, int], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class Predicate(str, enum.Enum):
    TAU_LE = "tau_le"
    SIGMA_DIV = "sigma_div"
    SIGMA_LE = "sigma_le"
    SIGMA_DIV_HALF_PHI = "sigma_div_half_phi"
    NILPOTENT = "nilpotent"
    GENERATOR = "generator"
    MAX_ORDER = "max_order"
    IDEMPOTENT = "idempotent"


def _check_budget(n: int, budget: int | None):
    limit = DEFAULT_BRUTE_BUDGET if budget is None else budget
    if n > limit:
        raise BudgetExceededError(f"n={n} exceeds the brute-force budget {limit}")


def orbit_stats(x: int, n: int) -> OrbitStats:
    """Walk x^0, x^1, ... until a residue repeats."""
    if n < 1 or not 0 <= x < n:
        raise ValueError(f"need n >= 1 and 0 <= x < n, got x={x}, n={n}")
    first_seen = {}
    y, k = 1 % n, 0
    while y not in first_seen:
        first_seen[y] = k
        y = y * x % n
        k += 1
    i = first_seen[y]
    return OrbitStats(x, k - i, i)


def orbit_table(n: int, budget: int | None = None, backend: str | None = None) -> OrbitTable:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    _check_budget(n, budget)
    sigma, tau, tail = _kernels.orbit_arrays(int(n), backend)
    return OrbitTable(n, sigma, tau, tail)


def census_by_orbit(n: int, budget: int | None = None, backend: str | None = None) -> OrbitCensus:
    t = orbit_table(n, budget, backend)
    counts = Counter(zip(t.sigma.tolist(), t.tau.tolist()))
    return OrbitCensus(n, dict(sorted(counts.items())))


def predicate_mask(table: OrbitTable, pred, T: int | None = None) -> np.ndarray:
    """Boolean mask over Z_n of the elements satisfying ``pred``."""
    pred = Predicate(pred)
    sigma, tau = table.sigma, table.tau
    if pred in (Predicate.TAU_LE, Predicate.SIGMA_DIV, Predicate.SIGMA_LE) and T is None:
        raise ValueError(f"predicate {pred.value} needs a parameter T")
    if pred is Predicate.TAU_LE:
        return tau <= T
    if pred is Predicate.SIGMA_DIV:
        return T % sigma == 0
    if pred is Predicate.SIGMA_LE:
        return sigma <= T
    if pred is Predicate.SIGMA_DIV_HALF_PHI:
        phi = int(table.units.sum())
        return (-(-phi // 2)) % sigma == 0
    if pred is Predicate.NILPOTENT:
        return (sigma == 1) & (table.tail == 0)
    if pred is Predicate.IDEMPOTENT:
        return (sigma == 1) & (tau <= 1)
    units = table.units
    if pred is Predicate.GENERATOR:
        return units & (sigma == int(units.sum()))
    # MAX_ORDER: the largest unit order is read off the orbits, not from a formula
    return units & (sigma == int(sigma[units].max()))


def count_predicate(n: int, pred, T: int | None = None, table: OrbitTable | None = None,
                    budget: int | None = None, backend: str | None = None) -> int:
    """Exact count of x in Z_n satisfying ``pred`` by orbit simulation."""
    if table is None:
        table = orbit_table(n, budget, backend)
    elif table.n != n:
        raise ValueError(f"orbit table is for n={table.n}, not {n}")
    return int(predicate_mask(table, pred, T).sum())
