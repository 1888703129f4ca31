"""Hot loops, each in two flavours: a numba kernel and a vectorized numpy path.

The public modules call the dispatchers at the bottom of this file, which pick
the backend from ``_jit.resolve_backend``.  Both paths must return identical
arrays; the test suite checks this directly.
"""
from math import isqrt

import numpy as np

from . import _rules as R
from ._jit import njit, resolve_backend

_pp_value = njit(R.prime_power_value)


# --------------------------------------------------------------------------
# smallest-prime-factor sieve
# --------------------------------------------------------------------------

@njit
def _spf_numba(limit):
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            if i * i <= limit:
                for j in range(i * i, limit + 1, i):
                    if spf[j] == 0:
                        spf[j] = i
    return spf


def _spf_numpy(limit):
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p::p]
            seg[seg == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


@njit
def _prime_mask_numba(limit):
    mask = np.ones(limit + 1, dtype=np.bool_)
    mask[0] = False
    mask[1] = False
    i = 2
    while i * i <= limit:
        if mask[i]:
            for j in range(i * i, limit + 1, i):
                mask[j] = False
        i += 1
    return mask


def _prime_mask_numpy(limit):
    mask = np.ones(limit + 1, dtype=np.bool_)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return mask


# --------------------------------------------------------------------------
# function values over a block [lo, hi) using a shared spf table
# --------------------------------------------------------------------------

@njit
def _factor_into(n, spf, ps, es):
    k = 0
    while n > 1:
        p = np.int64(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        ps[k] = p
        es[k] = e
        k += 1
    return k


@njit
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit
def _mult_from_factors(code, ps, es, k):
    v = np.int64(1)
    if code == R.CARMICHAEL:
        for i in range(k):
            t = _pp_value(code, ps[i], es[i])
            v = v // _gcd(v, t) * t
        return v
    for i in range(k):
        v *= _pp_value(code, ps[i], es[i])
    return v


@njit
def _value_at(code, n, spf, ps, es):
    k = _factor_into(n, spf, ps, es)
    if code < R.N_CODES:
        return _mult_from_factors(code, ps, es, k)
    if code == R.SIGMA_LE3:
        return (_mult_from_factors(R.SIGMA_DIV3, ps, es, k)
                - _mult_from_factors(R.SIGMA_DIV1, ps, es, k)
                + _mult_from_factors(R.SIGMA_DIV2, ps, es, k))
    if code == R.HALF_PERIOD or code == R.N_MINUS_HALF_PERIOD:
        m = n
        if n == 4:
            m = 3
        elif k == 1 and ps[0] > 2:
            m = ps[0] ** (es[0] - 1) * (ps[0] + 1) // 2
        elif k == 2 and ps[0] == 2 and es[0] == 1:
            m = ps[1] ** (es[1] - 1) * (ps[1] + 1)
        if code == R.HALF_PERIOD:
            return m
        return n - m
    if code == R.PRIMITIVE_ROOTS:
        cyclic = (n <= 2 or n == 4 or (k == 1 and ps[0] > 2)
                  or (k == 2 and ps[0] == 2 and es[0] == 1))
        if not cyclic:
            return np.int64(0)
        ph = _mult_from_factors(R.PHI, ps, es, k)
        k2 = _factor_into(ph, spf, ps, es)
        return _mult_from_factors(R.PHI, ps, es, k2)
    return np.int64(-1)


@njit
def _values_numba(code, spf, lo, hi):
    out = np.empty(hi - lo, dtype=np.int64)
    ps = np.empty(64, dtype=np.int64)
    es = np.empty(64, dtype=np.int64)
    for n in range(lo, hi):
        out[n - lo] = _value_at(code, np.int64(n), spf, ps, es)
    return out


def _prime_multiples(primes, lo, hi):
    """Yield ``(p, idx, e)``: offsets into [lo, hi) of multiples of p and their p-adic valuations."""
    for p in primes:
        p = int(p)
        first = -(-lo // p) * p
        if first >= hi:
            continue
        idx = np.arange(first - lo, hi - lo, p, dtype=np.int64)
        n = idx + lo
        e = np.ones(idx.size, dtype=np.int64)
        q = p * p
        while q < hi:
            e += (n % q == 0)
            q *= p
        yield p, idx, e


def _mult_numpy(code, primes, lo, hi):
    out = np.ones(hi - lo, dtype=np.int64)
    for p, idx, e in _prime_multiples(primes, lo, hi):
        table = np.array([0] + [R.prime_power_value(code, p, r) for r in range(1, int(e.max()) + 1)],
                         dtype=np.int64)
        if code == R.CARMICHAEL:
            out[idx] = np.lcm(out[idx], table[e])
        else:
            out[idx] *= table[e]
    return out


def _phi_of_array(vals, spf):
    res = vals.astype(np.int64, copy=True)
    rem = vals.astype(np.int64, copy=True)
    live = np.flatnonzero(rem > 1)
    while live.size:
        p = spf[rem[live]].astype(np.int64)
        res[live] = res[live] // p * (p - 1)
        div = np.ones(live.size, dtype=np.bool_)
        while div.any():
            div = rem[live] % p == 0
            rem[live[div]] //= p[div]
        live = live[rem[live] > 1]
    return res


def _values_numpy(code, spf, primes, lo, hi):
    if code < R.N_CODES:
        return _mult_numpy(code, primes, lo, hi)
    if code == R.SIGMA_LE3:
        return (_mult_numpy(R.SIGMA_DIV3, primes, lo, hi)
                - _mult_numpy(R.SIGMA_DIV1, primes, lo, hi)
                + _mult_numpy(R.SIGMA_DIV2, primes, lo, hi))
    n = np.arange(lo, hi, dtype=np.int64)
    if code in (R.HALF_PERIOD, R.N_MINUS_HALF_PERIOD):
        m = n.copy()
        if lo <= 4 < hi:
            m[4 - lo] = 3
        for p, idx, e in _prime_multiples(primes, lo, hi):
            if p == 2:
                continue
            pe = p ** e
            cof = n[idx] // pe
            base = pe // p * (p + 1)
            m[idx] = np.where(cof == 1, base // 2, np.where(cof == 2, base, m[idx]))
        return m if code == R.HALF_PERIOD else n - m
    if code == R.PRIMITIVE_ROOTS:
        phi = np.zeros(hi - lo, dtype=np.int64)
        for small, ph in ((1, 1), (2, 1), (4, 2)):
            if lo <= small < hi:
                phi[small - lo] = ph
        for p, idx, e in _prime_multiples(primes, lo, hi):
            if p == 2:
                continue
            pe = p ** e
            cof = n[idx] // pe
            cyc = (cof == 1) | (cof == 2)
            phi[idx[cyc]] = (pe[cyc] // p) * (p - 1)
        out = np.zeros(hi - lo, dtype=np.int64)
        hit = np.flatnonzero(phi)
        out[hit] = _phi_of_array(phi[hit], spf)
        return out
    raise ValueError(f"unknown function code {code}")


# --------------------------------------------------------------------------
# power-sequence orbits in Z_n
# --------------------------------------------------------------------------

@njit
def _orbit_numba(n):
    sigma = np.empty(n, dtype=np.int64)
    tau = np.empty(n, dtype=np.int64)
    tail = np.empty(n, dtype=np.int64)
    seen = np.full(n, -1, dtype=np.int64)
    one = 1 % n
    for x in range(n):
        y = one
        k = 0
        while seen[y] < 0:
            seen[y] = k
            y = (y * x) % n
            k += 1
        i = seen[y]
        tau[x] = i
        sigma[x] = k - i
        tail[x] = y
        y = one
        while seen[y] >= 0:
            seen[y] = -1
            y = (y * x) % n
    return sigma, tau, tail


def _orbit_numpy(n, cells=1 << 22):
    sigma = np.empty(n, dtype=np.int64)
    tau = np.empty(n, dtype=np.int64)
    tail = np.empty(n, dtype=np.int64)
    chunk = max(1, cells // n)
    for start in range(0, n, chunk):
        xs = np.arange(start, min(n, start + chunk), dtype=np.int64)
        rows = np.arange(xs.size)
        seen = np.full((xs.size, n), -1, dtype=np.int64)
        y = np.full(xs.size, 1 % n, dtype=np.int64)
        live = np.ones(xs.size, dtype=np.bool_)
        k = 0
        while live.any():
            r = rows[live]
            first = seen[r, y[r]]
            hit = first >= 0
            done = r[hit]
            tau[xs[done]] = first[hit]
            sigma[xs[done]] = k - first[hit]
            tail[xs[done]] = y[done]
            live[done] = False
            go = r[~hit]
            seen[go, y[go]] = k
            y[go] = (y[go] * xs[go]) % n
            k += 1
    return sigma, tau, tail


# --------------------------------------------------------------------------
# units of maximal multiplicative order
# --------------------------------------------------------------------------

@njit
def _powmod(b, e, m):
    r = 1 % m
    b %= m
    while e > 0:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


@njit
def _max_order_numba(n, target, qs):
    count = 0
    for x in range(n):
        if _gcd(x, n) != 1:
            continue
        ok = True
        for q in qs:
            if _powmod(x, target // q, n) == 1 % n:
                ok = False
                break
        if ok:
            count += 1
    return count


def _powmod_numpy(base, e, m):
    r = np.full(base.shape, 1 % m, dtype=np.int64)
    b = base % m
    while e > 0:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


def _max_order_numpy(n, target, qs):
    xs = np.arange(n, dtype=np.int64)
    units = xs[np.gcd(xs, n) == 1]
    ok = np.ones(units.size, dtype=np.bool_)
    for q in qs:
        ok &= _powmod_numpy(units, int(target) // int(q), n) != 1 % n
    return int(ok.sum())


# --------------------------------------------------------------------------
# dispatchers
# --------------------------------------------------------------------------

def spf_sieve(limit, backend=None):
    if resolve_backend(backend) == "numba":
        return _spf_numba(limit)
    return _spf_numpy(limit)


def prime_mask(limit, backend=None):
    if resolve_backend(backend) == "numba":
        return _prime_mask_numba(limit)
    return _prime_mask_numpy(limit)


def function_values(code, spf, lo, hi, backend=None, primes=None):
    """Values of ``code`` at every n in [lo, hi); requires ``hi - 1 <= len(spf) - 1``."""
    if resolve_backend(backend) == "numba":
        return _values_numba(code, spf, lo, hi)
    if primes is None:
        primes = np.flatnonzero(spf[:hi] == np.arange(hi, dtype=np.uint32))
        primes = primes[primes >= 2]
    return _values_numpy(code, spf, primes, lo, hi)


def orbit_arrays(n, backend=None):
    """Per-residue (period, transient, first cycle residue) arrays for Z_n."""
    if resolve_backend(backend) == "numba":
        return _orbit_numba(n)
    return _orbit_numpy(n)


def count_max_order(n, target, prime_divisors, backend=None):
    """Units of Z_n whose multiplicative order is exactly ``target`` (a multiple of every unit order)."""
    qs = np.asarray(prime_divisors, dtype=np.int64)
    if resolve_backend(backend) == "numba":
        return int(_max_order_numba(n, target, qs))
    return _max_order_numpy(n, target, qs)

