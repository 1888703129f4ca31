"""Periods and transient phases of power sequences in Z_n.

Brute-force orbit statistics, closed-form counting functions checked against
them, exact summatory tables, and high-precision Euler-product constants.
Set ``MODPOWER_DISABLE_NUMBA=1`` to run every kernel on the numpy fallback.
"""
__version__ = "0.1.0"

from .census import (FUNCTIONS, FunctionId, count_sigma_div, count_sigma_le3, count_tau_le, evaluate,
                     max_order_count, oracle_value, verify_formulas)
from .constants import (ConstantEstimate, ConstantId, dirichlet_identity_check, euler_product, joshi_sum,
                        log_factor_series, prime_zeta, schwarz_probe)
from .dynamics import OrbitStats, census_by_orbit, count_predicate, orbit_stats
from .factor import FactoredInteger, SpfTable, build_spf_table, factorize, primes_up_to
from .summatory import (SummatoryRow, kernel_reciprocal_diagnostics, predicted_asymptote, sieve_function_values,
                        summatory_table)

__all__ = [
    "FUNCTIONS", "FunctionId", "count_sigma_div", "count_sigma_le3", "count_tau_le", "evaluate",
    "max_order_count", "oracle_value", "verify_formulas",
    "ConstantEstimate", "ConstantId", "dirichlet_identity_check", "euler_product", "joshi_sum",
    "log_factor_series", "prime_zeta", "schwarz_probe",
    "OrbitStats", "census_by_orbit", "count_predicate", "orbit_stats",
    "FactoredInteger", "SpfTable", "build_spf_table", "factorize", "primes_up_to",
    "SummatoryRow", "kernel_reciprocal_diagnostics", "predicted_asymptote", "sieve_function_values", "summatory_table",
]
