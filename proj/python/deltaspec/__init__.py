"""Exact Fourier-sparse delta functions on products of cyclic groups.

The heavy lifting lives in the C++ core; this package re-exports the bound
calculators, explicit constructions, certificate-producing searches, and the
S-decoding polynomial utilities.
"""

from ._core import (
    BudgetExceeded,
    PreconditionError,
    VerificationError,
    bounds,
    canonical_set,
    construct_partitioned,
    construct_single,
    covering_number,
    fixtures_run,
    min_decoding_sparsity,
    min_sparsity,
    pir_params,
    translate_bound,
    trivial_decoding,
    verify_r2_lower,
)

__all__ = [
    "BudgetExceeded",
    "PreconditionError",
    "VerificationError",
    "bounds",
    "canonical_set",
    "construct_partitioned",
    "construct_single",
    "covering_number",
    "fixtures_run",
    "min_decoding_sparsity",
    "min_sparsity",
    "pir_params",
    "translate_bound",
    "trivial_decoding",
    "verify_r2_lower",
]
