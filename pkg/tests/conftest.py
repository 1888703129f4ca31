import numpy as np
import pytest

from modpower._jit import HAVE_NUMBA
from modpower.census import FUNCTIONS, FunctionId
from modpower.dynamics import orbit_table

SWEEP_MAX = 2000

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def oracle_values():
    """Brute-force value of every census function at n = 1..SWEEP_MAX."""
    out = {fid: np.zeros(SWEEP_MAX, dtype=np.int64) for fid in FunctionId}
    for n in range(1, SWEEP_MAX + 1):
        t = orbit_table(n)
        for fid, spec in FUNCTIONS.items():
            out[fid][n - 1] = spec.oracle(t)
    return out


def sieve_primes(limit):
    """Plain bytearray sieve, independent of the package."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def trial_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
