"""Closed-form counting functions and the table binding each one to its oracle.

Each function counts elements of Z_n by a condition on the power sequence of
the element.  Multiplicative ones are evaluated from their prime-power rules;
the others (sigma <= 3, the half-totient period count, primitive roots and
maximal-order units) have explicit global rules.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import lcm
from typing import Callable

from . import _kernels
from . import _rules as R
from .dynamics import DEFAULT_BRUTE_BUDGET, OrbitTable, Predicate, orbit_table, predicate_mask
from .errors import BudgetExceededError
from .factor import FactoredInteger, as_factored, eval_multiplicative, omega_kernel, totient


class FunctionId(str, enum.Enum):
    PHI = "phi"
    IDEM2OMEGA = "idem2omega"
    A = "a"
    B = "b"
    C = "c"
    U = "u"
    V = "v"
    W = "w"
    SIGMA_LE3 = "sigma_le3"
    M = "m"
    Z = "z"
    KAPPA = "kappa"
    PSI = "psi"
    G = "g"
    H = "h"


def _rule(code: int) -> Callable[[int, int], int]:
    return lambda p, r: R.prime_power_value(code, p, r)


_TAU_CODES = {1: R.TAU_LE1, 2: R.TAU_LE2, 3: R.TAU_LE3}
_SIGMA_CODES = {1: R.SIGMA_DIV1, 2: R.SIGMA_DIV2, 3: R.SIGMA_DIV3}


def count_tau_le(n, T: int) -> int:
    """#{x in Z_n : tau(x) <= T} for T in {1, 2, 3}."""
    if T not in _TAU_CODES:
        raise ValueError(f"closed forms exist only for T in 1..3, got {T}")
    return eval_multiplicative(_rule(_TAU_CODES[T]), n)


def count_sigma_div(n, T: int) -> int:
    """#{x in Z_n : sigma(x) divides T} for T in {1, 2, 3}."""
    if T not in _SIGMA_CODES:
        raise ValueError(f"closed forms exist only for T in 1..3, got {T}")
    return eval_multiplicative(_rule(_SIGMA_CODES[T]), n)


def count_sigma_le3(n) -> int:
    # sigma <= 3 iff sigma | 2 or sigma | 3, and sigma | 2 and sigma | 3 iff sigma = 1
    f = as_factored(n)
    return count_sigma_div(f, 3) - count_sigma_div(f, 1) + count_sigma_div(f, 2)


def _cyclic_shape(f: FactoredInteger) -> bool:
    """True when n is 1, 2, 4, q^j or 2 q^j with q an odd prime."""
    if f.n in (1, 2, 4):
        return True
    fs = f.factors
    return (len(fs) == 1 and fs[0][0] > 2) or (len(fs) == 2 and fs[0] == (2, 1))


def half_period_count(n) -> int:
    """#{x in Z_n : sigma(x) divides ceil(phi(n)/2)}.

    n = 1 and n = 2 fall in the generic branch and give m(n) = n, which agrees
    with the direct count (ceil(phi/2) = 1 there and every element has period 1).
    """
    f = as_factored(n)
    if f.n == 4:
        return 3
    fs = f.factors
    if len(fs) == 1 and fs[0][0] > 2:
        p, r = fs[0]
        return p ** (r - 1) * (p + 1) // 2
    if len(fs) == 2 and fs[0] == (2, 1):
        p, r = fs[1]
        return p ** (r - 1) * (p + 1)
    return f.n


def nilpotent_count(n) -> int:
    f = as_factored(n)
    return f.n // omega_kernel(f)[1]


def kernel(n) -> int:
    return omega_kernel(n)[1]


def carmichael(n) -> int:
    """Largest multiplicative order of a unit mod n (the reduced totient)."""
    return lcm(*(R.prime_power_value(R.CARMICHAEL, p, e) for p, e in as_factored(n).factors))


def primitive_root_count(n) -> int:
    f = as_factored(n)
    if not _cyclic_shape(f):
        return 0
    return totient(totient(f))


def max_order_count(n, budget: int | None = None, backend: str | None = None) -> int:
    """Units of Z_n of order exactly carmichael(n); brute force over the units.

    A unit has order psi iff x^(psi/q) != 1 for every prime q dividing psi.
    """
    f = as_factored(n)
    limit = DEFAULT_BRUTE_BUDGET if budget is None else budget
    if f.n > limit:
        raise BudgetExceededError(f"n={f.n} exceeds the brute-force budget {limit}")
    psi = carmichael(f)
    return _kernels.count_max_order(f.n, psi, as_factored(psi).primes, backend)


def idempotent_count(n) -> int:
    return 2 ** omega_kernel(n)[0]


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

def _count(pred, T=None):
    return lambda t: int(predicate_mask(t, pred, T).sum())


def _kappa_oracle(t: OrbitTable) -> int:
    return t.n // int(predicate_mask(t, Predicate.NILPOTENT).sum())


def _psi_oracle(t: OrbitTable) -> int:
    return int(t.sigma[t.units].max())


@dataclass(frozen=True)
class FunctionSpec:
    id: FunctionId
    multiplicative: bool
    evaluate: Callable[..., int]
    oracle: Callable[[OrbitTable], int]
    #: predicate and parameter the oracle counts, if it is a plain count
    predicate: tuple[Predicate, int | None] | None
    #: code understood by the sieve kernels
    sieve_code: int | None
    description: str


FUNCTIONS: dict[FunctionId, FunctionSpec] = {}


def _register(fid, multiplicative, evaluate, oracle, predicate, sieve_code, description):
    FUNCTIONS[fid] = FunctionSpec(fid, multiplicative, evaluate, oracle, predicate, sieve_code, description)


_register(FunctionId.PHI, True, totient, _count(Predicate.TAU_LE, 0), (Predicate.TAU_LE, 0), R.PHI,
          "units: tau = 0")
_register(FunctionId.IDEM2OMEGA, True, idempotent_count, _count(Predicate.IDEMPOTENT),
          (Predicate.IDEMPOTENT, None), R.IDEM, "idempotents: x^2 = x")
for _fid, _T in ((FunctionId.A, 1), (FunctionId.B, 2), (FunctionId.C, 3)):
    _register(_fid, True, (lambda T: lambda n: count_tau_le(n, T))(_T), _count(Predicate.TAU_LE, _T),
              (Predicate.TAU_LE, _T), _TAU_CODES[_T], f"tau <= {_T}")
for _fid, _T in ((FunctionId.U, 1), (FunctionId.V, 2), (FunctionId.W, 3)):
    _register(_fid, True, (lambda T: lambda n: count_sigma_div(n, T))(_T), _count(Predicate.SIGMA_DIV, _T),
              (Predicate.SIGMA_DIV, _T), _SIGMA_CODES[_T], f"sigma divides {_T}")
_register(FunctionId.SIGMA_LE3, False, count_sigma_le3, _count(Predicate.SIGMA_LE, 3), (Predicate.SIGMA_LE, 3),
          R.SIGMA_LE3, "sigma <= 3")
_register(FunctionId.M, False, half_period_count, _count(Predicate.SIGMA_DIV_HALF_PHI),
          (Predicate.SIGMA_DIV_HALF_PHI, None), R.HALF_PERIOD, "sigma divides ceil(phi(n)/2)")
_register(FunctionId.Z, True, nilpotent_count, _count(Predicate.NILPOTENT), (Predicate.NILPOTENT, None),
          R.NILPOTENT, "nilpotents")
_register(FunctionId.KAPPA, True, kernel, _kappa_oracle, None, R.KERNEL,
          "square-free kernel = n / #nilpotents")
_register(FunctionId.PSI, False, carmichael, _psi_oracle, None, R.CARMICHAEL,
          "largest unit order")
_register(FunctionId.G, False, primitive_root_count, _count(Predicate.GENERATOR), (Predicate.GENERATOR, None),
          R.PRIMITIVE_ROOTS, "units with sigma = phi(n)")
_register(FunctionId.H, False, max_order_count, _count(Predicate.MAX_ORDER), (Predicate.MAX_ORDER, None),
          None, "units with sigma = psi(n)")


def evaluate(fid, n) -> int:
    """Closed-form value of function ``fid`` at ``n``."""
    return FUNCTIONS[FunctionId(fid)].evaluate(n)


def oracle_value(fid, n, table: OrbitTable | None = None, backend: str | None = None) -> int:
    """Brute-force value of function ``fid`` at ``n`` from the orbit census."""
    if table is None:
        table = orbit_table(int(n), backend=backend)
    return FUNCTIONS[FunctionId(fid)].oracle(table)


@dataclass(frozen=True)
class Mismatch:
    fn: FunctionId
    n: int
    formula: int
    oracle: int


@dataclass(frozen=True)
class SweepReport:
    max_n: int
    checked: int
    mismatch: Mismatch | None

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def verify_formulas(max_n: int, ids=None, backend: str | None = None) -> SweepReport:
    """Compare every closed form with the orbit census for 1 <= n <= max_n.

    Stops at the first mismatch.
    """
    ids = list(FunctionId) if ids is None else [FunctionId(i) for i in ids]
    checked = 0
    for n in range(1, max_n + 1):
        table = orbit_table(n, backend=backend)
        f = as_factored(n)
        for fid in ids:
            spec = FUNCTIONS[fid]
            got = spec.evaluate(f) if fid is not FunctionId.H else max_order_count(f, backend=backend)
            want = spec.oracle(table)
            checked += 1
            if got != want:
                return SweepReport(max_n, checked, Mismatch(fid, n, got, want))
    return SweepReport(max_n, checked, None)

