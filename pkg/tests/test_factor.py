from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sieve_primes, trial_is_prime
from modpower._rules import TAU_LE1, prime_power_value
from modpower.errors import ArithmeticOverflowError, LimitExceededError
from modpower.factor import (FactoredInteger, build_spf_table, eval_multiplicative, factorize,
                             omega_kernel, primes_up_to, totient)


@pytest.fixture(scope="module")
def table():
    return build_spf_table(10**4)


def test_spf_small():
    t = build_spf_table(10)
    assert [t[i] for i in range(2, 11)] == [2, 3, 2, 5, 2, 7, 2, 3, 2]
    assert build_spf_table(2)[2] == 2


def test_spf_large_prime():
    t = build_spf_table(10**7)
    assert trial_is_prime(9999991)
    assert t[9999991] == 9999991


def test_spf_invariants(table):
    for i in range(2, table.limit + 1):
        p = table[i]
        assert i % p == 0 and trial_is_prime(p)
        assert (p == i) == trial_is_prime(i)


def test_spf_immutable(table):
    with pytest.raises(ValueError):
        table.spf[5] = 1


def test_spf_budget(monkeypatch):
    with pytest.raises(LimitExceededError):
        build_spf_table(1000, max_limit=100)
    monkeypatch.setenv("MODPOWER_SIEVE_LIMIT", "500")
    with pytest.raises(LimitExceededError):
        build_spf_table(1000)
    with pytest.raises(LimitExceededError):
        primes_up_to(1000)
    assert build_spf_table(1000, max_limit=1000).limit == 1000


def test_spf_bad_input():
    with pytest.raises(ValueError):
        build_spf_table(1)


@pytest.mark.parametrize("n, factors", [
    (12, ((2, 2), (3, 1))),
    (1, ()),
    (360, ((2, 3), (3, 2), (5, 1))),
])
def test_factorize_examples(n, factors, table):
    assert factorize(n).factors == factors
    assert factorize(n, table).factors == factors


def test_factorize_all_small(table):
    for n in range(1, table.limit + 1):
        f = factorize(n, table)
        assert prod(p**e for p, e in f.factors) == n
        assert f == factorize(n)


def test_factorize_beyond_table(table):
    n = 1000000007
    assert trial_is_prime(n)
    assert factorize(2 * 3 * 1000003, table).factors == ((2, 1), (3, 1), (1000003, 1))
    assert factorize(4 * n).factors == ((2, 2), (n, 1))


def test_factored_integer_validation():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(6, ((3, 1), (2, 1)))


def test_eval_multiplicative_examples():
    assert eval_multiplicative(lambda p, r: p**r, 12) == 12
    assert eval_multiplicative(lambda p, r: prime_power_value(TAU_LE1, p, r), 12) == 9
    assert eval_multiplicative(lambda p, r: 10**9, 1) == 1


def test_eval_multiplicative_brute_force_tau_le1():
    # x in Z_12 with x^(k+1) = x for some k >= 1
    brute = [x for x in range(12) if any(pow(x, k + 1, 12) == x for k in range(1, 13))]
    assert brute == [0, 1, 3, 4, 5, 7, 8, 9, 11]


def test_eval_multiplicative_overflow():
    ps = sieve_primes(200)
    n = FactoredInteger(prod(ps), tuple((p, 1) for p in ps))
    with pytest.raises(ArithmeticOverflowError):
        eval_multiplicative(lambda p, r: 2**40, n)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 300), st.integers(1, 300))
def test_multiplicativity(m, n):
    if gcd(m, n) != 1:
        return
    for rule in (lambda p, r: prime_power_value(TAU_LE1, p, r), lambda p, r: (p - 1) * p ** (r - 1)):
        assert eval_multiplicative(rule, m * n) == eval_multiplicative(rule, m) * eval_multiplicative(rule, n)


def test_totient_examples():
    assert totient(1) == 1
    assert totient(12) == 4
    assert totient(2**10) == 512


def test_totient_divisor_sum(table):
    N = table.limit
    acc = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        acc[d::d] += totient(factorize(d, table))
    assert (acc[1:] == np.arange(1, N + 1)).all()


@pytest.mark.parametrize("n, expected", [(12, (2, 6)), (1, (0, 1)), (8, (1, 2))])
def test_omega_kernel(n, expected):
    assert omega_kernel(n) == expected


def test_primes_up_to():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert primes_up_to(2).tolist() == [2]
    ps = primes_up_to(10**6)
    assert len(ps) == 78498
    assert ps.tolist() == sieve_primes(10**6)
