"""Parameter transforms between lognormal variables and their underlying normals.

Lognormals here use the base-10/10 convention ``Y = 10**(X/10) = exp(THETA*X)``
with ``X ~ N(mu_x, sigma_x**2)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError

THETA = math.log(10.0) / 10.0

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SumSpec:
    """A weighted sum ``S = sum_i weights[i] * Y_i`` of correlated lognormals.

    Parameters
    ----------
    means : array_like, shape (n,)
        Lognormal means, all strictly positive.
    cov : array_like, shape (n, n)
        Lognormal covariance matrix (variances on the diagonal).
    weights : array_like, shape (n,)
        Sum coefficients.
    """

    means: np.ndarray
    cov: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        means = np.array(self.means, dtype=float, ndmin=1)
        cov = np.array(self.cov, dtype=float, ndmin=2)
        weights = np.array(self.weights, dtype=float, ndmin=1)
        n = means.shape[0]
        if means.ndim != 1 or n < 1:
            raise ValidationError("means must be a non-empty vector")
        if weights.shape != (n,):
            raise ValidationError(f"weights has length {weights.size}, expected {n}")
        if cov.shape != (n, n):
            raise ValidationError(f"covariance has shape {cov.shape}, expected ({n}, {n})")
        for name, arr in (("means", means), ("cov", cov), ("weights", weights)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} contains non-finite values")
        for i in range(n):
            for j in range(i + 1, n):
                if abs(cov[i, j] - cov[j, i]) > SYMMETRY_TOL:
                    raise ValidationError(f"covariance not symmetric at ({i},{j})")
        for i in range(n):
            if means[i] <= 0:
                raise ValidationError(f"mean {i} must be strictly positive, got {means[i]}")
            if cov[i, i] <= 0:
                raise ValidationError(f"variance {i} must be strictly positive, got {cov[i, i]}")
        for arr in (means, cov, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self):
        return self.means.shape[0]

    def permuted(self, order):
        """Return the same sum with its components reordered."""
        order = np.asarray(order)
        return SumSpec(self.means[order], self.cov[np.ix_(order, order)], self.weights[order])

    def scaled(self, c):
        """Return the spec for ``c * S``."""
        return SumSpec(self.means, self.cov, c * self.weights)


@dataclass
class NormalSystem:
    """Means and covariance of the underlying normals, plus the Cholesky factor once computed."""

    means: np.ndarray
    cov: np.ndarray
    chol: np.ndarray | None = field(default=None)

    @property
    def n(self):
        return self.means.shape[0]

    def correlation(self):
        sd = np.sqrt(np.diag(self.cov))
        return self.cov / np.outer(sd, sd)


def normal_mean_from_lognormal(mu_y, var_y):
    """Mean of X such that ``exp(THETA*X)`` has mean ``mu_y`` and variance ``var_y``."""
    if not mu_y > 0:
        raise DomainError(f"lognormal mean must be > 0, got {mu_y}")
    if var_y < 0:
        raise DomainError(f"lognormal variance must be >= 0, got {var_y}")
    return (math.log(mu_y) - 0.5 * math.log1p(var_y / mu_y**2)) / THETA


def normal_var_from_lognormal(mu_yi, mu_yj, cov_ij):
    """Covariance of the underlying normals X_i, X_j (variance when i == j)."""
    if not (mu_yi > 0 and mu_yj > 0):
        raise DomainError(f"lognormal means must be > 0, got {mu_yi}, {mu_yj}")
    ratio = cov_ij / abs(mu_yi * mu_yj)
    if not 1.0 + ratio > 0:
        raise DomainError(
            f"covariance {cov_ij} too negative for a joint lognormal (1 + cov/|mu_i mu_j| = {1.0 + ratio})"
        )
    return math.log1p(ratio) / THETA**2


def lognormal_from_normal(mu_x, sigma_x):
    """Return ``(mean, variance)`` of ``exp(THETA*X)`` for ``X ~ N(mu_x, sigma_x**2)``."""
    if sigma_x < 0:
        raise DomainError(f"sigma_x must be >= 0, got {sigma_x}")
    s2 = (THETA * sigma_x) ** 2
    mean = math.exp(THETA * mu_x + 0.5 * s2)
    variance = math.exp(2.0 * THETA * mu_x + s2) * math.expm1(s2)
    return mean, variance


def underlying_system(spec):
    """Convert every component of ``spec`` to its underlying normal parameters."""
    n = spec.n
    means = np.empty(n)
    cov = np.empty((n, n))
    for i in range(n):
        try:
            means[i] = normal_mean_from_lognormal(spec.means[i], spec.cov[i, i])
        except DomainError as exc:
            raise DomainError(f"component {i}: {exc}") from exc
    for i in range(n):
        for j in range(i, n):
            try:
                v = normal_var_from_lognormal(spec.means[i], spec.means[j], spec.cov[i, j])
            except DomainError as exc:
                raise DomainError(f"entry ({i},{j}): {exc}") from exc
            cov[i, j] = cov[j, i] = v
    return NormalSystem(means, cov)


def sum_mean_var(spec):
    """Exact ``(E[S], V[S])`` of the weighted sum."""
    a = spec.weights
    return float(a @ spec.means), float(a @ spec.cov @ a)
