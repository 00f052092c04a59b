from .ball import Ball, Precision
from .constants import PrecisionExhausted, UnsupportedConstant, eval_constant
from .hurwitz import bernoulli, eval_polygamma, hurwitz_zeta
from .series import DivergentIndex, EffortExceeded, eval_series, series_enclosure, tail_bound
from .verify import (
    ApproximationReport,
    VerificationReport,
    approximation_report,
    eval_closed_form,
    verify_identity,
)
