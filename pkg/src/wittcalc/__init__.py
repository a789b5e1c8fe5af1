"""Exact Fermat-quotient calculus on truncated unramified Witt rings.

The package computes in Z_q/p^N (q = p^f) with per-element absolute
precision, provides the Frobenius lift, Teichmuller lifts and digits, the
Fermat quotient operator and the p-adic exp/log/psi calculus on top of it,
solves the multiplicative, difference and matrix equation families, and
probes computed values for bounded integer polynomial relations.
"""

from .conway import conway_polynomial, is_prime
from .delta import (
    DeltaJet,
    RestrictedSeries,
    delta_jet,
    eval_delta_function,
    fermat_quotient,
    padic_exp,
    padic_log,
    psi,
    psi_series_truncation,
)
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    DomainError,
    MixedParams,
    NonUnit,
    NotPrime,
    ParamsMismatch,
    PrecisionExhausted,
    PrecisionTooSmall,
    ReduciblePolynomial,
    SingularSeed,
    UnsupportedPrime,
    WittError,
)
from .relations import (
    RelationCertificate,
    RelationQuery,
    find_relation,
    lll_reduce,
    minimal_polynomial,
    monomials,
    verify_relation,
)
from .solvers import (
    ExponentialCertificate,
    ExponentialProblem,
    Obstruction,
    SolutionFamily,
    ZqMatrix,
    enumerate_constants,
    phi_norm,
    solve_difference,
    solve_exponential,
    solve_matrix_functional,
    solve_matrix_linear,
    verify_exponential,
    verify_matrix_linear,
)
from .zq import (
    FqElement,
    PadicParams,
    TeichmullerDigits,
    ValuationAtLeast,
    ZqElement,
    agreement_precision,
    digits,
    from_digits,
    frobenius,
    frobenius_inv,
    new_params,
    random_element,
    teichmuller,
    valuation,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "BudgetExceeded",
    "DeltaJet",
    "DomainError",
    "ExponentialCertificate",
    "ExponentialProblem",
    "FqElement",
    "MixedParams",
    "NonUnit",
    "NotPrime",
    "Obstruction",
    "PadicParams",
    "ParamsMismatch",
    "PrecisionExhausted",
    "PrecisionTooSmall",
    "ReduciblePolynomial",
    "RelationCertificate",
    "RelationQuery",
    "RestrictedSeries",
    "SingularSeed",
    "SolutionFamily",
    "TeichmullerDigits",
    "UnsupportedPrime",
    "ValuationAtLeast",
    "WittError",
    "ZqElement",
    "ZqMatrix",
    "agreement_precision",
    "conway_polynomial",
    "delta_jet",
    "digits",
    "enumerate_constants",
    "eval_delta_function",
    "fermat_quotient",
    "find_relation",
    "from_digits",
    "frobenius",
    "frobenius_inv",
    "is_prime",
    "lll_reduce",
    "minimal_polynomial",
    "monomials",
    "new_params",
    "padic_exp",
    "padic_log",
    "phi_norm",
    "psi",
    "psi_series_truncation",
    "random_element",
    "solve_difference",
    "solve_exponential",
    "solve_matrix_functional",
    "solve_matrix_linear",
    "teichmuller",
    "valuation",
    "verify_exponential",
    "verify_matrix_linear",
    "verify_relation",
]
