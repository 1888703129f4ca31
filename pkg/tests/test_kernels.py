import os
import subprocess
import sys

import numpy as np
import pytest

from modpower import _kernels
from modpower import _rules as R
from modpower._jit import HAVE_NUMBA, resolve_backend

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")

CODES = list(range(R.N_CODES)) + [R.SIGMA_LE3, R.HALF_PERIOD, R.N_MINUS_HALF_PERIOD, R.PRIMITIVE_ROOTS]


@needs_numba
def test_spf_backends_agree():
    for N in (2, 3, 10, 97, 10**5):
        assert np.array_equal(_kernels.spf_sieve(N, "numba"), _kernels.spf_sieve(N, "numpy"))
        assert np.array_equal(_kernels.prime_mask(N, "numba"), _kernels.prime_mask(N, "numpy"))


@needs_numba
@pytest.mark.parametrize("code", CODES)
def test_function_values_backends_agree(code):
    spf = _kernels.spf_sieve(20000, "numba")
    for lo, hi in ((1, 20001), (1, 2), (4, 5), (9973, 12345)):
        a = _kernels.function_values(code, spf, lo, hi, "numba")
        b = _kernels.function_values(code, spf, lo, hi, "numpy")
        assert np.array_equal(a, b), (code, lo, hi)


@needs_numba
def test_orbit_backends_agree():
    for n in (1, 2, 3, 4, 30, 97, 256, 1001):
        for a, b in zip(_kernels.orbit_arrays(n, "numba"), _kernels.orbit_arrays(n, "numpy")):
            assert np.array_equal(a, b)


def test_orbit_numpy_small_chunks():
    ref = _kernels._orbit_numpy(60)
    tiny = _kernels._orbit_numpy(60, cells=100)
    for a, b in zip(ref, tiny):
        assert np.array_equal(a, b)


def test_resolve_backend():
    assert resolve_backend("numpy") == "numpy"
    with pytest.raises(ValueError):
        resolve_backend("fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, MODPOWER_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from modpower._jit import default_backend; print(default_backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_env_flag_end_to_end():
    env = dict(os.environ, MODPOWER_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-m", "modpower", "eval", "--fn", "c", "--n", "16"],
                         env=env, capture_output=True, text=True, check=True)
    assert '"value": 12' in out.stdout


@needs_numba
def test_benchmark_script_runs():
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_backends.py"
    out = subprocess.run([sys.executable, str(script), "--sieve", "20000", "--values", "5000", "--orbit", "50",
                          "--repeat", "1"], capture_output=True, text=True, check=True)
    assert out.stdout.count("x\n") == 5
