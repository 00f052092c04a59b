"""Exact closed forms for sum 1/(n (16n^2-1)^r) and relatives, with certified numerics."""

from .derivation import (
    Anchor,
    InvalidReduction,
    SumExpression,
    SumIndex,
    SumTerm,
    anchor_coefficients,
    base_expression,
    derive,
    derive_closed_form,
    derive_weighted_closed_form,
    differentiate,
    polygamma_combination,
    reduce_weight,
)
from .exactcore import (
    CATALAN,
    EULER_GAMMA,
    LOG2,
    ONE,
    PI,
    BasisSymbol,
    ClosedForm,
    ZeroCoefficient,
    beta,
    cf_combine,
    cf_solve_linear,
    zeta_odd,
)
from .numerics import (
    Ball,
    Precision,
    VerificationReport,
    approximation_report,
    bernoulli,
    eval_closed_form,
    eval_constant,
    eval_polygamma,
    eval_series,
    tail_bound,
    verify_identity,
)

__version__ = "0.1.0"
