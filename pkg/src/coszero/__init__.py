"""coszero: rigorous zero counting and structure analysis for cosine
polynomials with restricted rational coefficients."""

from .bounds import (BoundReport, iterated_log, lemma42_support_bound,
                     mps_bound, theorem2_bound)
from .cyclotomic import CycElt, CyclotomicField, cyclotomic_polynomial, euler_phi
from .kernels import (averaging_poly, dirichlet, idempotence_check,
                      integral_over_interval, killing_check, sk)
from .periodic import (PeriodicDecomposition, RootOfUnity, cyclotomic_roots,
                       difference_operator, euler_phi_check, express_as_roots,
                       kernel_of_difference, periodic_decompose)
from .polycore import (CoefficientSet, CosinePolynomial, ExponentialPolynomial,
                       GridEvaluation, coefficient_stats, eval_grid, multiply,
                       to_algebraic)
from .structure import (CorrelationReport, RationalFunctionForm, StructuredForm,
                        correlation_report, reduce_to_structure,
                        structured_zero_bound, sums_of_d_bound,
                        to_rational_function_form)
from .windows import (WindowSpace, cramer_bound_check, front_supported_kernel,
                      window_rank, windows)
from .zeros import (CompanionPolynomial, ZeroCertificate, companion,
                    count_distinct_zeros, count_zeros_fast, l1_norm_exact)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CoefficientSet", "CompanionPolynomial", "CorrelationReport",
    "CosinePolynomial", "CycElt", "CyclotomicField", "ExponentialPolynomial",
    "GridEvaluation", "PeriodicDecomposition", "RationalFunctionForm",
    "RootOfUnity", "StructuredForm", "WindowSpace", "ZeroCertificate",
    "averaging_poly", "coefficient_stats", "companion", "correlation_report",
    "count_distinct_zeros", "count_zeros_fast", "cramer_bound_check",
    "cyclotomic_polynomial", "cyclotomic_roots", "difference_operator",
    "dirichlet", "euler_phi", "euler_phi_check", "eval_grid",
    "express_as_roots", "front_supported_kernel", "idempotence_check",
    "integral_over_interval", "iterated_log", "kernel_of_difference",
    "killing_check", "l1_norm_exact", "lemma42_support_bound", "mps_bound",
    "multiply", "periodic_decompose", "reduce_to_structure", "sk",
    "structured_zero_bound", "sums_of_d_bound", "theorem2_bound",
    "to_algebraic", "to_rational_function_form", "window_rank", "windows",
]
