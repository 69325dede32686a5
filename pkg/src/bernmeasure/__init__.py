"""Integrals against the Bernoulli measure ``mu_p`` on ``[0, 1]``.

Exact moments and polynomial integrals (recurrence and Hessenberg
determinants), the entire function ``I_p(w)`` with its functional
identities, the ``Q_n`` log-series, shifted Legendre coefficients, the
exp/log/power integrals, and brute-force oracles to check them against.
"""

from .corollary import exp_integral_det, exp_integral_series, log_integral, power_integral
from .entire_fn import (
    EvalConfig,
    fourier_coefficient,
    ip_product,
    ip_reduce,
    ip_taylor,
    residual_functional,
    residual_param_split,
    residual_reciprocal,
    residual_remark1,
    residual_symmetry,
)
from .errors import (
    BernoulliMeasureError,
    ConditioningError,
    DomainError,
    MomentOrderError,
    ResourceError,
    SingularParameterError,
)
from .hessenberg import MatrixForm, build_matrix, hessenberg_det, integrate_polynomial_det, moment_det
from .legendre import legendre_coeff_det, shifted_legendre
from .measure_core import (
    MeasureParam,
    MomentTable,
    Polynomial,
    integrate_poly_via_moments,
    moments_recurrence,
    poly_compose_affine,
)
from .oracle import dyadic_integrate, mc_integrate
from .qpoly import j_expansion, log_series_eval, q_sequence, root_certificate

__version__ = "0.1.0"
