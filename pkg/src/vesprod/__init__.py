"""Variable-elasticity-of-substitution production function toolkit."""

from .asymptotics import (
    AsymptoticSummary,
    End,
    limit_coefficients,
    limit_exponents,
    limit_function_at_infinity,
    limit_function_at_zero,
    loglog_slope,
    relative_gap,
    summarize,
)
from .calibrate import FitOptions, FitResult, Observation, fit, generate_synthetic, normalize
from .core import (
    CASE_1,
    CASE_2,
    DomainError,
    NumericFailure,
    ParameterError,
    RawParams,
    ValidatedParams,
    ValidationError,
    ValidationReport,
    capital_share,
    eval_f,
    eval_f_double_prime,
    eval_f_prime,
    eval_g,
    log_f,
    validate,
)
from .elasticity import (
    Regime,
    SigmaSeries,
    classify_regime,
    sigma_closed,
    sigma_from_derivatives,
    sigma_scan,
)
from .grid import Grid, Spacing
from .verify import InadaReport, ProbeConfig, check_inada, finite_diff_first, finite_diff_second

__version__ = "0.1.0"
