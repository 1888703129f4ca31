"""Prime-power rules for the multiplicative counting functions.

Written with integer operations only so the same source runs as exact Python
and, compiled by numba, inside the int64 sieve kernels.
"""

PHI = 0
IDEM = 1
TAU_LE1 = 2
TAU_LE2 = 3
TAU_LE3 = 4
SIGMA_DIV1 = 5
SIGMA_DIV2 = 6
SIGMA_DIV3 = 7
NILPOTENT = 8
KERNEL = 9
CARMICHAEL = 10
IDENTITY = 11
# p + 1 at every prime power; with KERNEL gives prod_{p|n} p/(p+1)
KERNEL_SUCC = 12

N_CODES = 13

# Non-multiplicative evaluators handled by the sieve kernels.
SIGMA_LE3 = 20
HALF_PERIOD = 21
N_MINUS_HALF_PERIOD = 22
PRIMITIVE_ROOTS = 23


def prime_power_value(code, p, r):
    """Value at ``p**r`` (``r >= 1``) of the function identified by ``code``."""
    if code == PHI:
        return (p - 1) * p ** (r - 1)
    if code == IDEM:
        return 2
    if code == TAU_LE1:
        if r == 1:
            return p
        return p ** r - p ** (r - 1) + 1
    if code == TAU_LE2:
        if r <= 2:
            return p ** r
        if r % 2 == 1:
            return p ** r - p ** (r - 1) + p ** ((r - 1) // 2)
        return p ** r - p ** (r - 1) + p ** (r // 2)
    if code == TAU_LE3:
        if r <= 3:
            return p ** r
        rm = r % 3
        if rm == 1:
            return p ** r - p ** (r - 1) + p ** (2 * (r - 1) // 3)
        if rm == 2:
            return p ** r - p ** (r - 1) + p ** ((2 * r - 1) // 3)
        return p ** r - p ** (r - 1) + p ** (2 * r // 3)
    if code == SIGMA_DIV1:
        if r == 1:
            return 2
        return p ** (r - 1) + 1
    if code == SIGMA_DIV2:
        if p == 2:
            if r <= 2:
                return 2 ** r
            return 2 ** (r - 1) + 4
        if r == 1:
            return 3
        return p ** (r - 1) + 2
    if code == SIGMA_DIV3:
        if p == 3:
            if r == 1:
                return 2
            return 3 ** (r - 1) + 3
        if p % 3 == 2:
            if r == 1:
                return 2
            return p ** (r - 1) + 1
        if r == 1:
            return 4
        return p ** (r - 1) + 3
    if code == NILPOTENT:
        return p ** (r - 1)
    if code == KERNEL:
        return p
    if code == CARMICHAEL:
        if p == 2 and r >= 3:
            return 2 ** (r - 2)
        return (p - 1) * p ** (r - 1)
    if code == IDENTITY:
        return p ** r
    if code == KERNEL_SUCC:
        return p + 1
    return -1
