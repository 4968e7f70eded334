"""Approximate weighted sums of correlated lognormals by a single lognormal."""

from .approximator import (
    STANDARD_PROBABILITIES,
    ApproxResult,
    approx_cdf,
    approx_quantile,
    approximate,
    moment_matched,
)
from .errors import LnSumError, NumericalError, ValidationError
from .mgf import MgfConstants, TPair, sum_mgf_constant, univariate_mgf
from .montecarlo import CdfGrid, SimConfig, default_grid, simulate_cdf
from .moments import THETA, NormalSystem, SumSpec, sum_mean_var, underlying_system
from .solver import SolverConfig
from .tuner import TunerConfig, optimize_tset

__all__ = [
    "STANDARD_PROBABILITIES",
    "THETA",
    "ApproxResult",
    "CdfGrid",
    "LnSumError",
    "MgfConstants",
    "NormalSystem",
    "NumericalError",
    "SimConfig",
    "SolverConfig",
    "SumSpec",
    "TPair",
    "TunerConfig",
    "ValidationError",
    "approx_cdf",
    "approx_quantile",
    "approximate",
    "default_grid",
    "moment_matched",
    "optimize_tset",
    "simulate_cdf",
    "sum_mean_var",
    "sum_mgf_constant",
    "underlying_system",
    "univariate_mgf",
]
