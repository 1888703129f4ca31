from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modpower.dynamics import (OrbitStats, Predicate, census_by_orbit, count_predicate, orbit_stats,
                               orbit_table)
from modpower.errors import BudgetExceededError
from modpower.factor import omega_kernel, totient


def naive_stats(x, n):
    """Period and transient straight from the definitions, by listing the first 2n + 2 powers."""
    seq = [pow(x, k, n) for k in range(2 * n + 2)]
    K = len(seq)
    sigma = next(m for m in range(1, n + 1) if all(seq[k + m] == seq[k] for k in range(n, K - m)))
    tau = next(l for l in range(0, n + 1) if all(seq[k + sigma] == seq[k] for k in range(l, K - sigma)))
    return sigma, tau


@pytest.mark.parametrize("x, n, expected", [
    (1, 7, (1, 0)),
    (3, 4, (2, 0)),
    (0, 4, (1, 1)),
    (2, 4, (1, 2)),
    (0, 1, (1, 0)),
])
def test_orbit_stats_examples(x, n, expected):
    s = orbit_stats(x, n)
    assert (s.sigma, s.tau) == expected


def test_one_is_the_unique_fixed_unit():
    for n in range(2, 60):
        hits = [x for x in range(n) if (orbit_stats(x, n).sigma, orbit_stats(x, n).tau) == (1, 0)]
        assert hits == [1]


def test_orbit_stats_matches_definition():
    for n in range(1, 40):
        for x in range(n):
            s = orbit_stats(x, n)
            assert (s.sigma, s.tau) == naive_stats(x, n), (x, n)


def test_orbit_table_matches_single(backend):
    for n in (1, 2, 12, 97, 128, 360):
        t = orbit_table(n, backend=backend)
        for x in range(n):
            assert t.stats(x) == orbit_stats(x, n)


def test_orbit_invariants_sweep():
    for n in range(1, 2001):
        t = orbit_table(n)
        xs = np.arange(n)
        assert (t.sigma >= 1).all() and (t.tau >= 0).all()
        assert (t.tau + t.sigma <= n + 1).all()
        for x in xs[::max(1, n // 50)]:
            x = int(x)
            s, tau = int(t.sigma[x]), int(t.tau[x])
            assert pow(x, tau + s, n) == pow(x, tau, n)
            if tau >= 1:
                assert pow(x, tau - 1 + s, n) != pow(x, tau - 1, n)
        assert int(t.units.sum()) == totient(n)
        assert count_predicate(n, Predicate.IDEMPOTENT, table=t) == 2 ** omega_kernel(n)[0]
        kappa = omega_kernel(n)[1]
        assert count_predicate(n, Predicate.NILPOTENT, table=t) == len(range(0, n, kappa))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3000).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))),
       st.integers(1, 40))
def test_some_k_condition_iff_period_divides(nx, m):
    n, x = nx
    s = orbit_stats(x, n)
    holds = any(pow(x, k + m, n) == pow(x, k, n) for k in range(1, s.tau + 2))
    assert holds == (m % s.sigma == 0)


def test_census_examples():
    assert census_by_orbit(1).counts == {(1, 0): 1}
    c4 = census_by_orbit(4)
    assert c4.counts == {(1, 0): 1, (2, 0): 1, (1, 1): 1, (1, 2): 1}
    c12 = census_by_orbit(12)
    assert c12.total == 12
    assert sum(k for (s, t), k in c12.counts.items() if t == 0) == 4


@pytest.mark.parametrize("n, pred, T, expected", [
    (21, Predicate.SIGMA_DIV, 3, 8),
    (21, Predicate.SIGMA_DIV, 1, 4),
    (21, Predicate.SIGMA_LE, 1, 4),
    (8, Predicate.NILPOTENT, None, 4),
    (12, Predicate.IDEMPOTENT, None, 4),
    (15, Predicate.MAX_ORDER, None, 4),
    (7, Predicate.GENERATOR, None, 2),
])
def test_count_predicate_examples(n, pred, T, expected):
    assert count_predicate(n, pred, T) == expected


def test_count_predicate_needs_parameter():
    with pytest.raises(ValueError):
        count_predicate(10, Predicate.TAU_LE)


def test_generator_units_only():
    # Z_1: the lone element counts as the unit
    assert count_predicate(1, Predicate.GENERATOR) == 1
    # the maximal-order predicate never counts non-units
    for n in (8, 12, 18, 100):
        t = orbit_table(n)
        mask = t.units & (t.sigma == t.sigma[t.units].max())
        assert all(gcd(int(x), n) == 1 for x in np.flatnonzero(mask))


def test_budget():
    with pytest.raises(BudgetExceededError):
        orbit_table(5000, budget=1000)
    with pytest.raises(BudgetExceededError):
        census_by_orbit(10**6 + 1)


def test_orbit_stats_type():
    assert orbit_stats(2, 4) == OrbitStats(2, 1, 2)
    with pytest.raises(ValueError):
        orbit_stats(4, 4)
