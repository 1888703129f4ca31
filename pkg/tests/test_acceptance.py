"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""
import io
import math
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from modpower.census import count_sigma_le3, verify_formulas
from modpower.constants import dirichlet_identity_check, euler_product, joshi_sum, kernel_series_log, schwarz_probe
from modpower.summatory import kernel_reciprocal_diagnostics, sieve_function_values, summatory_table


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}")
        assert ok, detail
    return emit


PUBLISHED = {"A": "0.440756919862", "B": "0.477176626987", "C": "0.490145568004",
             "Atilde": "0.233722383512", "three_over_pi_sq": "0.303963550927"}


def test_1_constants(report):
    details, ok = [], True
    for cid, digits in PUBLISHED.items():
        est = euler_product(cid, 5e-13)
        shown = mpmath.nstr(est.value, 16)
        d = mpmath.mpf(digits)
        good = (est.tail_bound < 5e-13 and shown.startswith(digits)
                and d - est.tail_bound <= est.value < d + mpmath.mpf("1e-12") + est.tail_bound)
        ok &= good
        details.append(f"{cid}={shown} (bound {est.tail_bound:.1e})")
    report(1, "constants to 12 published digits", ok, "; ".join(details))


def test_2_sweep(report):
    rep = verify_formulas(2000)
    detail = f"{rep.checked} comparisons, first mismatch: {rep.mismatch}"
    report(2, "closed forms equal the orbit census for n <= 2000", rep.ok and rep.checked == 2000 * 15, detail)


def test_3_worked_identity(report):
    vals = [count_sigma_le3(n) for n in (21, 3, 7)]
    ok = vals == [13, 3, 5] and vals[0] != vals[1] * vals[2]
    report(3, "sigma<=3 count at 21, 3, 7 and non-multiplicativity", ok, f"values {vals}, 3*5={vals[1] * vals[2]}")


def test_4_identities(report):
    details, ok = [], True
    for sid in "abcmuvwz":
        s = 2 if sid in "abcm" else 3
        rep = dirichlet_identity_check(sid, s, 10**6, 10**5)
        ok &= rep.ok
        details.append(f"{sid}: {rep.discrepancy:.2e}<={rep.combined_bound:.2e}")
    report(4, "Dirichlet identities at N=1e6, P=1e5", ok, "; ".join(details))


def test_5_joshi(report):
    j = joshi_sum(10**6)
    a = euler_product("A")
    diff = float(abs(j.value - a.value))
    report(5, "series for A at L=1e6 matches the product", diff < 1e-5, f"|diff|={diff:.2e}")


def test_6_summatory(report):
    N = 10**6
    cps = [10**3, N]
    rows = {f: summatory_table(f, N, cps, threads=2) for f in ("phi", "m", "a", "b", "c", "n_minus_m", "g")}
    checks = {
        "phi ratio in [0.999, 1.001]": 0.999 <= rows["phi"][1].ratio <= 1.001,
        "m ratio in [0.99, 1.01]": 0.99 <= rows["m"][1].ratio <= 1.01,
    }
    details = [f"phi={rows['phi'][1].ratio:.6f}", f"m={rows['m'][1].ratio:.6f}"]
    for f in ("a", "b", "c", "n_minus_m", "g"):
        d3, d6 = (abs(r.ratio - 1) for r in rows[f])
        checks[f"{f} discrepancy shrinks"] = d6 < d3
        details.append(f"{f}: {d3:.4f}->{d6:.4f}")
    failed = [k for k, v in checks.items() if not v]
    report(6, "summatory asymptotics at N=1e6", not failed,
           ", ".join(details) + (f" | failed: {', '.join(failed)}" if failed else ""))


def test_7_determinism(report):
    outs = []
    for t in ("1", "8"):
        res = subprocess.run([sys.executable, "-m", "modpower", "sum", "--fn", "a", "--max", "1000000",
                              "--threads", t], capture_output=True, check=True)
        outs.append(res.stdout)
    report(7, "sum --fn a --max 1e6 identical at 1 and 8 threads", outs[0] == outs[1] and outs[0] != b"",
           f"{len(outs[0])} bytes each")


def test_8_diagnostics(report):
    rows = kernel_reciprocal_diagnostics(10**5)
    probe = schwarz_probe(10**5)
    N = 10**5
    kap = sieve_function_values("kappa", N).astype(np.float64)
    direct = math.fsum((1 / (kap * np.arange(1, N + 1))).tolist())
    product = math.exp(kernel_series_log(1.0))
    gap = abs(product - direct)
    emitted = len(rows) == 4 and all(math.isfinite(r.debruijn_ratio) for r in rows) and math.isfinite(probe.schwarz_ratio)
    ok = emitted and gap < 1e-3 and probe.is_local_min
    detail = (f"{len(rows)} rows, last ratio {rows[-1].debruijn_ratio:.4f}; y*={probe.y_star:.4f}, "
              f"Schwarz ratio {probe.schwarz_ratio:.4f}; |product-direct| at y=1: {gap:.2e}")
    report(8, "1/kappa diagnostics, y=1 product check, local minimality", ok, detail)
