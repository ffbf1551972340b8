"""Finite-difference verification of every analytic gradient."""

from spectrumgan.gradcheck.finite_difference import (
    numerical_gradient,
    relative_error,
)
from spectrumgan.gradcheck.suite import (
    CheckOutcome,
    GradientCheck,
    SuiteReport,
    default_checks,
    run_gradcheck_suite,
)

__all__ = [
    "CheckOutcome",
    "GradientCheck",
    "SuiteReport",
    "default_checks",
    "numerical_gradient",
    "relative_error",
    "run_gradcheck_suite",
]
