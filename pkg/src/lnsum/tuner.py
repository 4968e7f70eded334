"""Grid search over the t-set that best reproduces a simulated CDF."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .approximator import approx_cdf, fit, prepare
from .errors import NumericalError, OptimizationError, ValidationError
from .mgf import DEFAULT_MAX_TERMS, MgfConstants, TPair, sum_mgf_constant
from .solver import SolverConfig


def uniform_weights(s):
    return np.ones_like(np.asarray(s, dtype=float))


def three_band_weights(s):
    """1 below 0.75, 15 on [0.75, 1.10], 50 above 1.10."""
    s = np.asarray(s, dtype=float)
    return np.where(s < 0.75, 1.0, np.where(s <= 1.10, 15.0, 50.0))


def band_weights(breaks, weights):
    """Piecewise-constant weight: ``weights[i]`` on ``[breaks[i-1], breaks[i])``."""
    breaks = np.asarray(breaks, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if weights.size != breaks.size + 1:
        raise ValidationError("band weights need exactly one more weight than breaks")
    if np.any(np.diff(breaks) <= 0) or np.any(weights < 0):
        raise ValidationError("breaks must increase and weights must be non-negative")

    def weight_fn(s):
        return weights[np.searchsorted(breaks, np.asarray(s, dtype=float), side="right")]

    return weight_fn


WEIGHT_PRESETS = {
    "uniform": uniform_weights,
    "three-band": three_band_weights,
}


@dataclass(frozen=True)
class TunerConfig:
    upper_limit: int
    precision: int
    weight_fn: object = uniform_weights
    workers: int = 1

    def __post_init__(self):
        if self.upper_limit < 2:
            raise ValidationError(f"upper_limit must be >= 2, got {self.upper_limit}")
        if self.precision < 1:
            raise ValidationError(f"precision must be >= 1, got {self.precision}")
        if self.upper_limit // self.precision < 1:
            raise ValidationError(
                f"upper_limit ({self.upper_limit}) must be at least precision ({self.precision})"
            )
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}")
        if self.workers > self.upper_limit - 1:
            raise ValidationError(
                f"cannot split {self.upper_limit - 1} t1 values across {self.workers} workers"
            )

    @property
    def divisor(self):
        return self.upper_limit // self.precision

    def t_value(self, index):
        return -index / self.divisor

    @property
    def pair_count(self):
        return comb(self.upper_limit, 2)


@dataclass(frozen=True)
class TunerResult:
    best_score: float
    best_tpair: TPair
    best_result: object
    best_indices: tuple
    evaluated: int
    skipped: int
    failures: list = field(default_factory=list, repr=False)


def objective(result, truth, weight_fn=uniform_weights):
    """Weighted sum of absolute relative CDF errors over grid points with ``p > 0``."""
    p = truth.probabilities
    keep = p > 0
    if not np.any(keep):
        return 0.0
    s = truth.domain[keep]
    approx = approx_cdf(result, s)
    return float(np.sum(weight_fn(s) * np.abs(approx - p[keep]) / p[keep]))


def _search(spec, truth, config, solver_config, constants, t1_values):
    best = None
    evaluated = skipped = 0
    failures = []
    ul = config.upper_limit
    for i in t1_values:
        for j in range(i + 1, ul + 1):
            tpair = TPair(config.t_value(i), config.t_value(j))
            try:
                result = fit(spec, tpair, MgfConstants(constants[i], constants[j]), solver_config)
            except NumericalError as exc:
                skipped += 1
                failures.append(((i, j), str(exc)))
                continue
            evaluated += 1
            score = objective(result, truth, config.weight_fn)
            key = (score, i, j)
            if best is None or key < best[0]:
                best = (key, result)
    return best, evaluated, skipped, failures


def optimize_tset(spec, truth, config, solver_config=SolverConfig(), max_terms=DEFAULT_MAX_TERMS):
    """Evaluate every index pair ``1 <= i < j <= upper_limit`` and keep the best.

    Index ``i`` maps to ``t = -i / (upper_limit // precision)``. Ties on the
    score go to the lexicographically smallest ``(i, j)``, which keeps the
    answer independent of ``config.workers``.
    """
    normal = prepare(spec)
    ul = config.upper_limit
    constants = {i: sum_mgf_constant(config.t_value(i), spec, normal, max_terms) for i in range(1, ul + 1)}

    t1_all = np.arange(1, ul)
    chunks = [c.tolist() for c in np.array_split(t1_all, config.workers)]
    if config.workers == 1:
        parts = [_search(spec, truth, config, solver_config, constants, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(
                pool.map(lambda c: _search(spec, truth, config, solver_config, constants, c), chunks)
            )

    best = None
    evaluated = skipped = 0
    failures = []
    for part_best, n_ok, n_bad, fails in parts:
        evaluated += n_ok
        skipped += n_bad
        failures += fails
        if part_best is not None and (best is None or part_best[0] < best[0]):
            best = part_best
    if best is None:
        raise OptimizationError(f"all {skipped} t-set candidates failed to solve")
    (score, i, j), result = best
    return TunerResult(score, result.tpair, result, (i, j), evaluated, skipped, failures)
