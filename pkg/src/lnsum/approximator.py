"""End-to-end fit of a single lognormal to a weighted sum of correlated lognormals."""

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import DomainError, LnSumError
from .factorize import factorize
from .mgf import DEFAULT_MAX_TERMS, MgfConstants, TPair, mgf_constants
from .moments import THETA, NormalSystem, lognormal_from_normal, sum_mean_var, underlying_system
from .solver import SolveOutcome, SolverConfig, moment_matched_point, newton_solve

# Column probabilities of the comparison table.
STANDARD_PROBABILITIES = (0.01, 0.05, 0.10, 0.30, 0.50, 0.80, 0.90, 0.95, 0.99)


@dataclass(frozen=True)
class ApproxResult:
    lognormal_mean: float
    lognormal_variance: float
    normal_mu: float
    normal_sigma: float
    tpair: TPair | None
    solver: SolveOutcome | None
    constants: MgfConstants | None = None

    def cdf(self, s):
        return approx_cdf(self, s)

    def quantile(self, p):
        return approx_quantile(self, p)


@contextmanager
def _stage(name):
    try:
        yield
    except LnSumError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def prepare(spec):
    """Underlying normal system of ``spec`` with its Cholesky factor filled in."""
    with _stage("convert"):
        normal = underlying_system(spec)
    with _stage("factorize"):
        factorize(normal)
    return normal


def _result(mu_x, sigma_x, tpair, outcome, constants):
    mean, variance = lognormal_from_normal(mu_x, sigma_x)
    return ApproxResult(mean, variance, mu_x, sigma_x, tpair, outcome, constants)


def fit(spec, tpair, constants, config=SolverConfig()):
    """Solve for the approximating lognormal given precomputed MGF constants."""
    with _stage("solve"):
        outcome = newton_solve(tpair, constants, spec, config)
    return _result(outcome.mu_x, outcome.sigma_x, tpair, outcome, constants)


def approximate(spec, tpair, config=SolverConfig(), normal=None, max_terms=DEFAULT_MAX_TERMS):
    """Fit a lognormal to ``spec`` by matching quadrature MGFs at ``tpair``.

    ``normal`` may be passed to reuse an already factorized system.
    """
    if not isinstance(tpair, TPair):
        tpair = TPair(*tpair)
    if normal is None:
        normal = prepare(spec)
    with _stage("mgf"):
        constants = mgf_constants(tpair, spec, normal, max_terms)
    return fit(spec, tpair, constants, config)


def moment_matched(spec):
    """The lognormal with mean ``E[S]`` and variance ``V[S]``, without solving."""
    with _stage("moments"):
        mu_x, sigma_x = moment_matched_point(*sum_mean_var(spec))
    return _result(mu_x, sigma_x, None, None, None)


def approx_cdf(result, s):
    """``P(S <= s)`` under the fitted lognormal; 0 for ``s <= 0``."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    x = np.log(s[pos]) / THETA
    if result.normal_sigma > 0:
        out[pos] = ndtr((x - result.normal_mu) / result.normal_sigma)
    else:
        out[pos] = (x >= result.normal_mu).astype(float)
    return float(out) if out.ndim == 0 else out


def approx_quantile(result, p):
    """Inverse of :func:`approx_cdf` for ``0 < p < 1``."""
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
        raise DomainError(f"probability must lie in (0, 1), got {p}")
    s = np.exp(THETA * (result.normal_mu + result.normal_sigma * ndtri(p)))
    return float(s) if s.ndim == 0 else s
