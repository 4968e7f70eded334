"""Quadrature approximations of lognormal and lognormal-sum MGFs at negative t."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, ValidationError
from .moments import THETA
from .quadrature import NODES, ORDER, WEIGHTS

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)

DEFAULT_MAX_TERMS = ORDER**8


@dataclass(frozen=True)
class TPair:
    """The two negative MGF arguments used to build the matching equations."""

    t1: float
    t2: float

    def __post_init__(self):
        t1, t2 = float(self.t1), float(self.t2)
        if not (t1 < 0 and t2 < 0):
            raise ValidationError(f"t-values must be negative, got ({t1}, {t2})")
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "t2", t2)
        if t1 == t2:
            warnings.warn(
                f"The t-values are equal, t1={t1!r} and t2={t2!r}; "
                "one equation will be used to solve for 2 unknowns.",
                RuntimeWarning,
                stacklevel=3,
            )

    def __iter__(self):
        yield self.t1
        yield self.t2


@dataclass(frozen=True)
class MgfConstants:
    c1: float
    c2: float

    def __iter__(self):
        yield self.c1
        yield self.c2


def _check_t(t):
    if t > 0:
        raise DomainError(f"MGF is only approximated for t < 0, got t={t}")


def _exponents(t, mu_x, sigma_x):
    # a = theta*(sqrt2*sigma*node + mu); the integrand is exp(t*exp(a))
    a = THETA * (SQRT2 * sigma_x * NODES + mu_x)
    with np.errstate(over="ignore"):
        return a, t * np.exp(a)


def univariate_mgf(t, mu_x, sigma_x):
    """Gauss-Hermite estimate of ``E[exp(t*Y)]`` for ``Y = exp(THETA*X)``, X ~ N(mu_x, sigma_x**2)."""
    _check_t(t)
    _, te = _exponents(t, mu_x, sigma_x)
    return float(WEIGHTS @ np.exp(te)) / SQRT_PI


def univariate_mgf_partials(t, mu_x, sigma_x):
    """Analytic ``(d/dmu_x, d/dsigma_x)`` of :func:`univariate_mgf`."""
    _check_t(t)
    a, te = _exponents(t, mu_x, sigma_x)
    # exp(t*e) * e folded into one exponential so e -> inf gives 0, not nan
    with np.errstate(over="ignore", invalid="ignore"):
        g = WEIGHTS * np.exp(te + a)
    d_mu = THETA * t / SQRT_PI * float(g.sum())
    d_sigma = THETA * t * SQRT2 / SQRT_PI * float(g @ NODES)
    return d_mu, d_sigma


def sum_mgf_constant(t, spec, normal, max_terms=DEFAULT_MAX_TERMS):
    """Gauss-Hermite estimate of ``E[exp(t*S)]`` for the correlated sum.

    Enumerates all ``12**n`` node combinations depth first. Component ``i``
    only depends on the nodes of components ``0..i`` (``L`` is lower
    triangular), so each level multiplies its factor into a running product
    and the last level is evaluated over all 12 nodes at once.

    Parameters
    ----------
    t : float
        Negative MGF argument.
    spec : SumSpec
        Supplies the sum weights.
    normal : NormalSystem
        Underlying normal means and Cholesky factor (``normal.chol`` must be set).
    max_terms : int
        Refuse to enumerate more than this many combinations.
    """
    _check_t(t)
    if normal.chol is None:
        raise ValidationError("normal system has not been factorized")
    n = normal.n
    if ORDER**n > max_terms:
        raise CapacityError(f"{ORDER}**{n} quadrature terms exceed the budget of {max_terms}")

    scaled_l = SQRT2 * np.asarray(normal.chol)
    mu = np.asarray(normal.means)
    ta = t * np.asarray(spec.weights)
    chosen = np.zeros(n)

    def level(i, running):
        offset = scaled_l[i, :i] @ chosen[:i] + mu[i]
        factors = WEIGHTS * np.exp(ta[i] * np.exp(THETA * (scaled_l[i, i] * NODES + offset)))
        if i == n - 1:
            return running * float(factors.sum())
        total = 0.0
        for k in range(ORDER):
            chosen[i] = NODES[k]
            total += level(i + 1, running * factors[k])
        return total

    return level(0, 1.0) / math.pi ** (n / 2)


def mgf_constants(tpair, spec, normal, max_terms=DEFAULT_MAX_TERMS):
    return MgfConstants(
        sum_mgf_constant(tpair.t1, spec, normal, max_terms),
        sum_mgf_constant(tpair.t2, spec, normal, max_terms),
    )
