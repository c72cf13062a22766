"""dinicert: certified numerics for Dini-function zeros and unit-disk
starlikeness certificates of Bessel-derived function families."""

__version__ = "0.1.0"

from .errors import DomainError, NumericFailure, PoleError
from .families import DiniFamily, Order
from .bessel import (
    bessel_j,
    bessel_j_prime,
    gamma_real,
    oracle_closed_form,
    w_eval,
    w_prime_eval,
    w_series_terms,
)
from .zeros import (
    ZeroEntry,
    ZeroTable,
    dini_eval,
    dini_prime,
    find_zeros,
    ismail_lower_bound,
    landau_monotonicity_check,
    smallest_zero_exceeds_one,
)
from .criterion import (
    CriticalOrder,
    SumCriterion,
    critical_equation,
    critical_order,
    evaluate_criterion,
    sum_closed,
    sum_truncated,
)
from .certify import (
    CertReport,
    FactorizationCheck,
    GridSpec,
    certify,
    factorization_check,
    starlike_sample,
)

__all__ = [
    "__version__",
    "DomainError", "NumericFailure", "PoleError",
    "DiniFamily", "Order",
    "bessel_j", "bessel_j_prime", "gamma_real", "oracle_closed_form",
    "w_eval", "w_prime_eval", "w_series_terms",
    "ZeroEntry", "ZeroTable", "dini_eval", "dini_prime", "find_zeros",
    "ismail_lower_bound", "landau_monotonicity_check", "smallest_zero_exceeds_one",
    "CriticalOrder", "SumCriterion", "critical_equation", "critical_order",
    "evaluate_criterion", "sum_closed", "sum_truncated",
    "CertReport", "FactorizationCheck", "GridSpec", "certify",
    "factorization_check", "starlike_sample",
]
