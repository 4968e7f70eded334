"""Positive-definiteness check and lower Cholesky factor of the normal covariance."""

import math

import numpy as np

from .errors import FactorizationError, NotPositiveDefiniteError, ValidationError
from .moments import SYMMETRY_TOL


def _require_symmetric(cov):
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {cov.shape}")
    n = cov.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(cov[i, j] - cov[j, i]) > SYMMETRY_TOL:
                raise ValidationError(f"covariance not symmetric at ({i},{j})")
    return cov


def check_positive_definite(cov):
    """Return the smallest eigenvalue of the symmetric matrix ``cov``.

    The caller decides what to do with a non-positive result; see
    :func:`factorize` for the raising variant.
    """
    cov = _require_symmetric(cov)
    return float(np.linalg.eigvalsh(cov)[0])


def cholesky_lower(cov):
    """Lower-triangular ``L`` with positive diagonal such that ``L @ L.T == cov``.

    Raises
    ------
    FactorizationError
        If a pivot is not strictly positive; ``pivot`` carries its index.
    """
    cov = _require_symmetric(cov)
    n = cov.shape[0]
    L = np.zeros((n, n))
    for j in range(n):
        d = cov[j, j] - L[j, :j] @ L[j, :j]
        if not d > 0.0:
            raise FactorizationError(f"non-positive pivot {d!r} at index {j}", pivot=j)
        L[j, j] = math.sqrt(d)
        for i in range(j + 1, n):
            L[i, j] = (cov[i, j] - L[i, :j] @ L[j, :j]) / L[j, j]
    return L


def factorize(normal):
    """Eigenvalue check followed by Cholesky; fills and returns ``normal.chol``."""
    min_eig = check_positive_definite(normal.cov)
    if min_eig <= 0.0:
        raise NotPositiveDefiniteError(
            f"normal covariance matrix is not positive definite (min eigenvalue {min_eig:.10g})",
            min_eigenvalue=min_eig,
        )
    normal.chol = cholesky_lower(normal.cov)
    return normal.chol
