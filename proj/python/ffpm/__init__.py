"""GF(q) transforms, witness polynomials, rank bounds and avoiding-set search."""

from ._core import (
    Error,
    Field,
    GuardError,
    HypothesisError,
    PolynomialMap,
    analyze,
    build_witness,
    c_main,
    c_prime,
    count_at_most,
    digit_sum,
    exact_tail,
    hoeffding_bound,
    kernel_orthogonality,
    rank_certificate,
    search,
    synthesize,
)

__all__ = [
    "Error",
    "Field",
    "GuardError",
    "HypothesisError",
    "PolynomialMap",
    "analyze",
    "build_witness",
    "c_main",
    "c_prime",
    "count_at_most",
    "digit_sum",
    "exact_tail",
    "hoeffding_bound",
    "kernel_orthogonality",
    "rank_certificate",
    "search",
    "synthesize",
]
