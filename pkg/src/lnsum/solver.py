"""Newton solve of the two MGF-matching equations for the approximating lognormal."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError, SingularJacobianError, ValidationError
from .moments import THETA, sum_mean_var
from .mgf import univariate_mgf, univariate_mgf_partials

SINGULAR_DET = 1e-300


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-10
    max_iterations: int = 200

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValidationError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValidationError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class SolveOutcome:
    mu_x: float
    sigma_x: float
    iterations: int
    final_residual: float
    converged: bool


def moment_matched_point(mean, variance):
    """Underlying normal ``(mu_x, sigma_x)`` of the lognormal with the given mean and variance."""
    if not mean > 0:
        raise DomainError(f"E[S] must be > 0 to start Newton's method, got {mean}")
    log_ratio = math.log1p(variance / mean**2)
    mu_x0 = (math.log(mean) - 0.5 * log_ratio) / THETA
    sigma_x0 = math.sqrt(log_ratio) / THETA
    return mu_x0, sigma_x0


def initial_point(spec):
    """Starting point whose lognormal has mean ``E[S]`` and variance ``V[S]``."""
    return moment_matched_point(*sum_mean_var(spec))


def residuals(mu_x, sigma_x, tpair, constants):
    return (
        univariate_mgf(tpair.t1, mu_x, sigma_x) - constants.c1,
        univariate_mgf(tpair.t2, mu_x, sigma_x) - constants.c2,
    )


def jacobian(mu_x, sigma_x, tpair):
    """Rows are the two equations, columns are d/dmu_x and d/dsigma_x."""
    return np.array([univariate_mgf_partials(t, mu_x, sigma_x) for t in tpair])


def newton_solve(tpair, constants, spec=None, config=SolverConfig(), start=None):
    """Solve ``univariate_mgf(t_i, mu, sigma) == C_i`` for i = 1, 2.

    Starts from :func:`initial_point` of ``spec`` unless ``start`` is given.
    Steps are pure Newton without damping; a negative ``sigma`` (start or
    step) is reflected, since the equations are even in ``sigma``.
    """
    if start is None:
        if spec is None:
            raise ValidationError("newton_solve needs either spec or start")
        start = initial_point(spec)
    mu, sigma = float(start[0]), abs(float(start[1]))

    for iteration in range(config.max_iterations + 1):
        r = np.array(residuals(mu, sigma, tpair, constants))
        worst = float(np.max(np.abs(r)))
        if not math.isfinite(worst):
            raise NonConvergenceError(
                "residual became non-finite", iterate=(mu, sigma), residual=worst
            )
        if worst < config.epsilon:
            return SolveOutcome(mu, sigma, iteration, worst, True)
        if iteration == config.max_iterations:
            break
        a = jacobian(mu, sigma, tpair)
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        if not abs(det) > SINGULAR_DET:
            raise SingularJacobianError(
                f"Jacobian is singular (det={det:.3g}) at iteration {iteration}",
                iterate=(mu, sigma),
            )
        try:
            step = np.linalg.solve(a, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobianError(str(exc), iterate=(mu, sigma)) from exc
        mu += float(step[0])
        sigma = abs(sigma + float(step[1]))

    raise NonConvergenceError(
        f"no convergence after {config.max_iterations} iterations (max |residual| {worst:.3g})",
        iterate=(mu, sigma),
        residual=worst,
    )
