"""Euler-product constants, prime zeta values and Dirichlet-series checks.

All constants are products over primes of ``1 - x(p)`` with ``x(p)`` a rational
function of ``p``.  Two evaluation routes are provided:

* **direct** -- sum ``log(1 - x(p))`` over primes up to a bound P and bound the
  rest with ``|log(1 - x)| <= 2x`` (valid for x <= 1/2);
* **accelerated** -- handle primes up to a small base bound directly and
  write ``log(1 - x(p)) = sum_k e_k p^-k`` for the rest, so the tail becomes
  ``sum_k e_k (P(k) - sum_{p <= base} p^-k)`` with P the prime zeta function.

Every estimate carries a tail bound derived from these inequalities; the
accelerated remainder is bounded by a Cauchy estimate of the coefficients on
the circle |t| = 1/2 in the variable t = 1/p.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy import integrate

from .census import FunctionId
from .errors import BracketFailureError, ConvergenceRegionError, PrecisionUnreachableError
from .factor import factorize, primes_up_to
from .sieve import sieve_function_values

WORKING_DPS = 40
PRECISION_FLOOR = 1e-13
DIRECT_SMALL_PRIMES = 10**4


class ConstantId(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    ATILDE = "Atilde"
    THREE_OVER_PI_SQ = "three_over_pi_sq"
    SIX_OVER_PI_SQ = "six_over_pi_sq"


@dataclass(frozen=True)
class _ProductSpec:
    prefactor: Fraction
    # x(t) = num(t) / den(t) with t = 1/p, coefficient lists in increasing degree
    num: tuple[int, ...]
    den: tuple[int, ...]
    # x(p) <= scale * p**-degree for every prime p
    scale: int
    degree: int
    # max |log(1 - x(t))| on |t| = 1/2
    cauchy: float


_PRODUCTS = {
    ConstantId.A: _ProductSpec(Fraction(1, 2), (0, 0, 0, 1), (1, 1), 1, 3, math.log(4 / 3)),
    ConstantId.B: _ProductSpec(Fraction(1, 2), (0, 0, 0, 0, 1), (1, 1, 1), 1, 4, math.log(4 / 3)),
    ConstantId.C: _ProductSpec(Fraction(1, 2), (0, 0, 0, 0, 0, 1), (1, 1, 1, 1), 1, 5, math.log(4 / 3)),
    ConstantId.ATILDE: _ProductSpec(Fraction(5, 8), (0, 0, 1), (1, -1), 2, 2, math.log(2)),
}


@dataclass(frozen=True)
class ConstantEstimate:
    id: ConstantId
    value: mpmath.mpf
    tail_bound: float
    prime_bound: int
    series_depth: int
    method: str = "direct"


def _x_of_p(spec: _ProductSpec, p):
    """x(p) evaluated with whatever number type ``p`` is (int, mpf or float array)."""
    t = 1 / p
    num = sum(c * t**i for i, c in enumerate(spec.num) if c)
    den = sum(c * t**i for i, c in enumerate(spec.den) if c)
    return num / den


def _closed_form(cid: ConstantId) -> ConstantEstimate:
    with mpmath.workdps(WORKING_DPS):
        v = 3 / mpmath.pi**2
        if cid is ConstantId.SIX_OVER_PI_SQ:
            v = 2 * v
    return ConstantEstimate(cid, v, 0.0, 0, 0, "closed-form")


def _direct_bound(spec: _ProductSpec, P: int) -> float:
    """Upper bound on sum_{p > P} |log(1 - x(p))|."""
    return 2 * spec.scale * P ** (1 - spec.degree) / (spec.degree - 1)


def _direct(cid: ConstantId, P: int) -> ConstantEstimate:
    spec = _PRODUCTS[cid]
    primes = primes_up_to(P)
    small = primes[primes <= DIRECT_SMALL_PRIMES].tolist()
    large = primes[primes > DIRECT_SMALL_PRIMES].astype(np.float64)
    with mpmath.workdps(WORKING_DPS):
        log_small = mpmath.fsum(mpmath.log(1 - _x_of_p(spec, mpmath.mpf(p))) for p in small)
        terms = np.log1p(-_x_of_p(spec, large))
        log_large = math.fsum(terms.tolist())
        value = spec.prefactor.numerator * mpmath.exp(log_small + log_large) / spec.prefactor.denominator
    # log1p of a correctly rounded argument: a few ulps per term
    rounding = 1e-15 * float(np.abs(terms).sum())
    bound = float(value) * (_direct_bound(spec, P) + rounding) + 1e-30
    return ConstantEstimate(cid, value, bound, P, 0, "direct")


# --------------------------------------------------------------------------
# series acceleration
# --------------------------------------------------------------------------

def _mobius(j: int) -> int:
    f = factorize(j).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def _prime_zeta(k: int, target_error: float):
    """(value, bound) of P(k) via Moebius inversion of log zeta."""
    # 0 < log zeta(s) <= zeta(s) - 1 <= 2^-s + 2^(1-s)/(s-1) <= 3 * 2^-s for s >= 2
    total = mpmath.mpf(0)
    j = 1
    while True:
        mu = _mobius(j)
        if mu:
            total += mpmath.mpf(mu) / j * mpmath.log(mpmath.zeta(j * k))
        rest = 3 * 2.0 ** (-(j + 1) * k) / (1 - 2.0**-k)
        if rest < target_error:
            return total, rest
        j += 1


def prime_zeta(k: int, target_error: float = 1e-30):
    """P(k) = sum over primes of p^-k, for integer k >= 2."""
    if k < 2:
        raise ValueError(f"prime zeta needs k >= 2, got {k}")
    with mpmath.workdps(WORKING_DPS + 10):
        value, _ = _prime_zeta(int(k), target_error)
        return +value


def _series_mul(a: list[int], b: list[int], K: int) -> list[int]:
    out = [0] * (K + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(0, K + 1 - i):
                out[i + j] += ai * b[j]
    return out


@lru_cache(maxsize=None)
def _log_coefficients(cid: ConstantId, K: int) -> tuple[Fraction, ...]:
    spec = _PRODUCTS[cid]
    # x = num / den as a power series in t (den[0] == 1, so the inverse is integral)
    inv = [0] * (K + 1)
    inv[0] = 1
    den = list(spec.den) + [0] * (K + 1)
    for i in range(1, K + 1):
        inv[i] = -sum(den[j] * inv[i - j] for j in range(1, i + 1))
    x = _series_mul(list(spec.num), inv, K)
    # log(1 - x) = -sum_j x^j / j
    coeffs = [Fraction(0)] * (K + 1)
    power = x
    j = 1
    while any(power):
        for i, c in enumerate(power):
            if c:
                coeffs[i] -= Fraction(c, j)
        j += 1
        power = _series_mul(power, x, K)
    return tuple(coeffs)


def log_factor_series(cid, K: int) -> list[Fraction]:
    """Exact e_2..e_K with log(1 - x(p)) = sum_k e_k p^-k for the constant ``cid``.

    The remainder after degree K is at most ``cauchy * sum_{k > K} (2/p)^k``.
    """
    if K < 2:
        raise ValueError(f"K must be at least 2, got {K}")
    cid = ConstantId(cid)
    if cid not in _PRODUCTS:
        raise ValueError(f"{cid.value} is not an Euler product")
    return list(_log_coefficients(cid, K)[2:])


def log_series_remainder(cid, K: int, p: float) -> float:
    """Bound on the truncation error of log_factor_series at a single prime p >= 3."""
    q = 2.0 / p
    return _PRODUCTS[ConstantId(cid)].cauchy * q ** (K + 1) / (1 - q)


def _accelerated(cid: ConstantId, base: int, K: int) -> ConstantEstimate:
    spec = _PRODUCTS[cid]
    coeffs = _log_coefficients(cid, K)
    small = primes_up_to(base).tolist()
    with mpmath.workdps(WORKING_DPS + 10):
        log_small = mpmath.fsum(mpmath.log(1 - _x_of_p(spec, mpmath.mpf(p))) for p in small)
        rest = mpmath.mpf(0)
        bound = 0.0
        for k in range(2, K + 1):
            e = coeffs[k]
            if not e:
                continue
            # sum_{p > base} p^-k <= base^(1-k) / (k-1)
            tail_k = base ** (1.0 - k) / (k - 1)
            if abs(float(e)) * tail_k < 1e-45:
                bound += abs(float(e)) * tail_k
                continue
            pz, pz_err = _prime_zeta(k, 1e-45)
            partial = mpmath.fsum(mpmath.mpf(p) ** -k for p in small)
            rest += mpmath.mpf(e.numerator) / e.denominator * (pz - partial)
            bound += abs(float(e)) * (pz_err + 1e-48)
        # coefficients beyond K: |e_k| <= cauchy * 2^k, and sum_{p>base} p^-k <= base^(1-k)/(k-1)
        q = 2.0 / base
        bound += spec.cauchy * base * q ** (K + 1) / (1 - q)
        value = spec.prefactor.numerator * mpmath.exp(log_small + rest) / spec.prefactor.denominator
    with mpmath.workdps(WORKING_DPS):
        value = +value
    tail = float(value) * math.expm1(bound) + 1e-30
    return ConstantEstimate(cid, value, tail, base, K, "accelerated")


def euler_product(cid, target_error: float = 5e-13, method: str = "auto",
                  prime_bound: int | None = None, base_bound: int = 1000,
                  series_depth: int = 64) -> ConstantEstimate:
    """Evaluate a constant to within ``target_error``.

    ``method="auto"`` uses the direct product for A, B, C and the accelerated
    series for Atilde, whose O(p^-2) factors make direct truncation hopeless.
    """
    cid = ConstantId(cid)
    if target_error < PRECISION_FLOOR:
        raise PrecisionUnreachableError(f"target error {target_error:g} is below the floor {PRECISION_FLOOR:g}")
    if cid in (ConstantId.THREE_OVER_PI_SQ, ConstantId.SIX_OVER_PI_SQ):
        return _closed_form(cid)
    if method == "auto":
        method = "accelerated" if cid is ConstantId.ATILDE else "direct"
    if method == "direct":
        spec = _PRODUCTS[cid]
        if prime_bound is None:
            # every constant here is below 1, so the log-tail bound also bounds the value error
            prime_bound = 10**5
            while _direct_bound(spec, prime_bound) > target_error and prime_bound < 10**7:
                prime_bound *= 10
        est = _direct(cid, prime_bound)
    elif method == "accelerated":
        est = _accelerated(cid, base_bound, series_depth)
    else:
        raise ValueError(f"unknown method {method!r}")
    if est.tail_bound > target_error:
        raise PrecisionUnreachableError(
            f"{cid.value}: {est.method} evaluation reaches only {est.tail_bound:.3g} > {target_error:g}")
    return est


@lru_cache(maxsize=None)
def constant_value(cid) -> mpmath.mpf:
    """Cached value of a constant at the default target error."""
    cid = ConstantId(cid)
    if cid in _PRODUCTS:
        return euler_product(cid, method="accelerated").value
    return euler_product(cid).value


def joshi_sum(L: int, backend: str | None = None) -> ConstantEstimate:
    """A from the series 3/pi^2 * sum_{l <= L} l^-2 prod_{p | l} p/(p+1).

    Every omitted term is positive and below (3/pi^2) l^-2, so the truncation
    error is below (3/pi^2)/L.
    """
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    kap = sieve_function_values(FunctionId.KAPPA, L, backend=backend).astype(np.float64)
    succ = sieve_function_values("kernel_succ", L, backend=backend).astype(np.float64)
    ell = np.arange(1, L + 1, dtype=np.float64)
    terms = kap / succ / (ell * ell)
    with mpmath.workdps(WORKING_DPS):
        c = 3 / mpmath.pi**2
        value = c * mpmath.mpf(math.fsum(terms.tolist()))
        tail = float(c) / L + 1e-15 * float(value)
    return ConstantEstimate(ConstantId.A, value, tail, 0, L, "joshi")


# --------------------------------------------------------------------------
# Dirichlet-series identities
# --------------------------------------------------------------------------

# series id -> weight offset: the sum is f(n) / n^(s + offset)
_WEIGHT_OFFSET = {"a": 1, "b": 1, "c": 1, "m": 1, "u": 0, "v": 0, "w": 0, "z": 0}


def _euler_factor(series: str, p, s):
    """Closed-form Euler factor at the prime p (mpf arithmetic)."""
    if series == "a":
        return 1 + (p ** (s + 2) - 2 * p + 1) / (p * (p ** (s + 1) - 1) * (p**s - 1))
    if series == "b":
        return 1 + ((p ** (3 * s + 2) + p ** (2 * s + 2) - 2 * p ** (s + 1) + p**s - 2 * p + 1)
                    / (p * (p ** (2 * s + 1) - 1) * (p ** (2 * s) - 1)))
    if series == "c":
        return 1 + ((p ** (5 * s + 2) + p ** (4 * s + 2) + p ** (3 * s + 2) - 2 * p ** (2 * s + 1)
                     + p ** (2 * s) - 2 * p ** (s + 1) + p**s - 2 * p + 1)
                    / (p * (p ** (3 * s + 1) - 1) * (p ** (3 * s) - 1)))
    if series == "u":
        return 1 + (2 * p**s - p - 1) / (p * (p**s - 1) * (p ** (s - 1) - 1))
    if series == "v":
        if p == 2:
            return 1 + 2 / p**s + 4 / p ** (2 * s) + (p ** (s + 2) - 6) / (p ** (2 * s) * (p**s - 1) * (p ** (s - 1) - 1))
        return 1 + (3 * p**s - 2 * p - 1) / (p * (p**s - 1) * (p ** (s - 1) - 1))
    if series == "w":
        if p == 3:
            return 1 + 2 / p**s + (2 * p**s - 4) / (p**s * (p**s - 1) * (p ** (s - 1) - 1))
        if int(p) % 3 == 2:
            return _euler_factor("u", p, s)
        return 1 + (4 * p**s - 3 * p - 1) / (p * (p**s - 1) * (p ** (s - 1) - 1))
    if series == "z":
        return 1 + 1 / (p * (p ** (s - 1) - 1))
    raise ValueError(f"no Euler product for series {series!r}")


@dataclass(frozen=True)
class SeriesCheckReport:
    series_id: str
    s: float
    sum_truncation_N: int
    product_prime_bound_P: int
    lhs: float
    rhs: float
    discrepancy: float
    lhs_bound: float
    rhs_bound: float

    @property
    def combined_bound(self) -> float:
        return self.lhs_bound + self.rhs_bound

    @property
    def ok(self) -> bool:
        return self.discrepancy <= self.combined_bound


def dirichlet_identity_check(series_id: str, s: float, N: int, P: int, threads: int = 1,
                             backend: str | None = None) -> SeriesCheckReport:
    """Compare the truncated Dirichlet sum of a census function with its closed form.

    Both truncations are bounded using only f(n) <= n (every census function
    counts a subset of Z_n), so the reported bounds are rigorous.
    """
    series_id = FunctionId(series_id).value
    if series_id not in _WEIGHT_OFFSET:
        raise ValueError(f"no closed-form series for {series_id!r}")
    offset = _WEIGHT_OFFSET[series_id]
    weight = s + offset
    # absolute convergence needs f(n)/n^weight summable with f(n) ~ n
    if weight <= 2:
        region = "s > 1" if offset else "s > 2"
        raise ConvergenceRegionError(f"series {series_id} needs {region}, got s={s}")
    if N < 100 or P < 100:
        raise ValueError("N and P must both be at least 100")

    vals = sieve_function_values(series_id, N, threads=threads, backend=backend).astype(np.float64)
    n = np.arange(1, N + 1, dtype=np.float64)
    lhs_terms = vals * np.exp(-weight * np.log(n))
    lhs = math.fsum(lhs_terms.tolist())
    # sum_{n > N} n^(1 - weight) <= N^(2 - weight) / (weight - 2)
    lhs_bound = N ** (2 - weight) / (weight - 2) + 1e-15 * lhs

    primes = primes_up_to(P).tolist()
    with mpmath.workdps(30):
        sm = mpmath.mpf(s)
        if series_id == "m":
            scale = (2**sm + 1) / 2 ** (sm + 1)
            acc = mpmath.fsum((p - 1) / (mpmath.mpf(p) * (mpmath.mpf(p) ** sm - 1)) for p in primes if p > 2)
            rhs = float(mpmath.zeta(sm) - 1 / mpmath.mpf(4) ** (sm + 1) - scale * acc)
            # (p-1)/(p(p^s-1)) <= 1/(p^s - 1) <= 2 p^-s
            rhs_bound = float(scale) * 2 * P ** (1 - s) / (s - 1)
        else:
            log_rhs = mpmath.fsum(mpmath.log(_euler_factor(series_id, mpmath.mpf(p), sm)) for p in primes)
            rhs = float(mpmath.exp(log_rhs))
            # Euler factor - 1 <= sum_r p^r / p^(r weight) = 1/(p^(weight-1) - 1) <= 2 p^(1 - weight)
            tail_log = 2 * P ** (2 - weight) / (weight - 2)
            rhs_bound = rhs * math.expm1(tail_log)
    rhs_bound += 1e-14 * abs(rhs)
    return SeriesCheckReport(series_id, float(s), N, P, lhs, rhs, abs(lhs - rhs), lhs_bound, rhs_bound)


# --------------------------------------------------------------------------
# Schwarz minimization for sum 1/kappa(n)
# --------------------------------------------------------------------------

GOLDEN = (math.sqrt(5) - 1) / 2


@lru_cache(maxsize=4)
def _primes_float(P: int) -> np.ndarray:
    return primes_up_to(P).astype(np.float64)


def kernel_series_log(y: float, prime_bound: int = 10**6, tail: bool = True) -> float:
    """log of sum_n 1/(kappa(n) n^y) = sum_p log(1 + 1/(p (p^y - 1))), for y > 0.

    Primes above ``prime_bound`` are replaced by the integral against dt/log t.
    """
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    p = _primes_float(prime_bound)
    lp = np.log(p)
    head = math.fsum(np.log1p(1.0 / (p * np.expm1(y * lp))).tolist())
    if not tail:
        return head

    def integrand(u):
        # e^u log1p(a) with a = e^-u / (e^(yu) - 1), rearranged to avoid overflow
        if y * u > 700:
            return 0.0
        inv = 1.0 / math.expm1(y * u)
        a = math.exp(-u) * inv
        ratio = math.log1p(a) / a if a > 0 else 1.0
        return ratio * inv / u

    rest, _ = integrate.quad(integrand, math.log(prime_bound), np.inf, limit=200)
    return head + rest


def golden_section(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 500):
    """Minimize a unimodal ``f`` on [lo, hi]; returns (argmin, f(argmin))."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    it = 0
    while hi - lo > tol and it < max_iter:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        it += 1
    x = (lo + hi) / 2
    return x, f(x)


@dataclass(frozen=True)
class SchwarzProbe:
    N: int
    y_star: float
    min_value: float
    kernel_sum: float
    schwarz_rhs: float
    schwarz_ratio: float
    probe_delta: float
    is_local_min: bool


def schwarz_probe(N: int, tol: float = 1e-8, prime_bound: int = 10**6, window: tuple[float, float] = (1e-3, 4.0),
                  grid: int = 80, probe_delta: float = 1e-2, backend: str | None = None) -> SchwarzProbe:
    """Minimize y log N + log sum 1/(kappa(n) n^y) and form the ratio to the Schwarz asymptote."""
    if N < 16:
        raise ValueError(f"N must be at least 16, got {N}")
    if tol < 1e-10:
        raise ValueError(f"tol must be at least 1e-10, got {tol}")
    lnN = math.log(N)

    def objective(y):
        return y * lnN + kernel_series_log(y, prime_bound)

    ys = np.geomspace(window[0], window[1], grid)
    vals = [objective(float(y)) for y in ys]
    i = int(np.argmin(vals))
    if i == 0 or i == len(ys) - 1:
        raise BracketFailureError(f"minimum of the Schwarz objective sits at the window edge y={ys[i]:.4g}")
    y_star, f_star = golden_section(objective, float(ys[i - 1]), float(ys[i + 1]), tol)
    is_min = (objective(y_star * (1 - probe_delta)) > f_star
              and objective(y_star * (1 + probe_delta)) > f_star)
    from .summatory import kernel_reciprocal_sum

    ksum = float(kernel_reciprocal_sum(N, exact=False, backend=backend))
    min_value = math.exp(f_star)
    rhs = 2 ** -0.25 * (4 * math.pi) ** -0.5 * (math.log(lnN) / lnN) ** 0.25 * min_value
    return SchwarzProbe(N, y_star, min_value, ksum, rhs, ksum / rhs, probe_delta, is_min)
