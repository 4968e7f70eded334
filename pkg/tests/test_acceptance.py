"""End-to-end acceptance checks, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; the lines are echoed in the
terminal summary (see ``conftest.py``) as well as printed under ``-s``.
"""

import itertools
import math
import time

import numpy as np
import pytest

from lnsum.approximator import STANDARD_PROBABILITIES, approximate, moment_matched, prepare
from lnsum.factorize import cholesky_lower
from lnsum.mgf import TPair, sum_mgf_constant, univariate_mgf_partials
from lnsum.moments import THETA, SumSpec, lognormal_from_normal, underlying_system
from lnsum.montecarlo import SimConfig, default_grid, simulate_cdf
from lnsum.presets import finance_spec, worked_example_spec
from lnsum.quadrature import NODES, WEIGHTS
from lnsum.tuner import TunerConfig, objective, optimize_tset

from .conftest import random_pd, random_spec
from .table2 import MGF1, MGF2, SIMULATION
from .test_mgf import central_difference

REPORT = []
ALPHAS = (0.25, 0.50, 0.75)


def verdict(label, ok, detail):
    line = f"{label:<34} {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT.append(line)
    print(line)
    assert ok, line


def best_time(fn, repeat=20):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def quantile_row(result):
    return np.array([result.quantile(p) for p in STANDARD_PROBABILITIES])


def test_c01_worked_derivation():
    spec = worked_example_spec()
    ns = underlying_system(spec)
    got = [
        ns.means[0], ns.means[1], ns.cov[0, 0], ns.cov[1, 1], ns.cov[0, 1], ns.correlation()[0, 1],
    ]
    want = [-3.0103, 1.5051, 26.1471, 13.0736, 11.7554, 0.635811]
    err = max(abs(g - w) for g, w in zip(got, want))
    elapsed = best_time(lambda: underlying_system(spec))
    verdict("C1 parameter derivation", err <= 5e-4 and elapsed < 1e-3,
            f"max err {err:.2e} (tol 5e-4), {elapsed * 1e3:.3f} ms (< 1 ms)")


def test_c02_quadrature_identities():
    total = math.fsum(WEIGHTS)
    e1 = abs(total - math.sqrt(math.pi))
    e2 = abs(math.fsum(a * b for a in WEIGHTS for b in WEIGHTS) - math.pi)
    verdict("C2 quadrature identities", e1 < 1e-10 and e2 < 1e-9, f"|sum w - sqrt(pi)| {e1:.1e}, |sum sum - pi| {e2:.1e}")


def test_c03_mgf1_rows():
    specs = {a: finance_spec(a) for a in ALPHAS}

    def run():
        return {a: quantile_row(approximate(specs[a], TPair(-1.0, -0.2))) for a in ALPHAS}

    rows = run()
    err = max(np.max(np.abs(rows[a] - np.array(MGF1[a]))) for a in ALPHAS)
    elapsed = best_time(run, repeat=5)
    verdict("C3 MGF(1) quantile rows", err <= 5e-4 and elapsed < 1e-2,
            f"max cell err {err:.2e} (tol 5e-4), {elapsed * 1e3:.2f} ms (< 10 ms)")


def test_c04_moment_matched_degeneracy():
    mismatched = 0
    worst_pub = 0.0
    for a in ALPHAS:
        spec = finance_spec(a)
        mgf2 = np.round(quantile_row(approximate(spec, TPair(-0.001, -0.005))), 4)
        mm = np.round(quantile_row(moment_matched(spec)), 4)
        mismatched += int(np.sum(mgf2 != mm))
        worst_pub = max(worst_pub, float(np.max(np.abs(mm - np.array(MGF2[a])))))
    verdict("C4 M-M equals MGF(2)", mismatched == 0, f"{mismatched}/27 cells differ at 4 decimals; vs reference {worst_pub:.1e}")


def test_c05_simulation_rows():
    grid = default_grid(3.0, 30000)
    config = SimConfig(10**7, seed=0)
    worst = 0.0
    start = time.perf_counter()
    for a in ALPHAS:
        sim = simulate_cdf(finance_spec(a), grid, config)
        qs = np.array([sim.quantile(p) for p in STANDARD_PROBABILITIES])
        worst = max(worst, float(np.max(np.abs(qs - np.array(SIMULATION[a])))))
    per_alpha = (time.perf_counter() - start) / len(ALPHAS)
    verdict("C5 simulation rows, N=1e7", worst <= 0.004, f"max cell err {worst:.4f} (tol 0.004), {per_alpha:.2f} s per alpha")


def brute_force_constant(t, spec, normal):
    n = spec.n
    l = normal.chol
    total = 0.0
    root2 = math.sqrt(2.0)
    for idx in itertools.product(range(len(NODES)), repeat=n):
        z = root2 * np.array([NODES[k] for k in idx])
        x = normal.means + l @ z
        s = float(np.dot(spec.weights, np.exp(THETA * x)))
        total += math.prod(WEIGHTS[k] for k in idx) * math.exp(t * s)
    return total / math.pi ** (n / 2)


def test_c06_enumerator_vs_brute_force():
    rng = np.random.default_rng(2024)
    worst = 0.0
    start = time.perf_counter()
    for _ in range(10):
        spec = random_spec(rng, 3)
        normal = prepare(spec)
        t = -rng.uniform(0.05, 2.0)
        fast = sum_mgf_constant(t, spec, normal)
        slow = brute_force_constant(t, spec, normal)
        worst = max(worst, abs(fast - slow) / abs(slow))
    elapsed = time.perf_counter() - start
    verdict("C6 n=3 enumerator oracle", worst <= 1e-13, f"max rel err {worst:.1e} (tol 1e-13), {elapsed:.2f} s incl. oracle")


def test_c07_identity_reduction():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        mean = rng.uniform(0.5, 3.0)
        var = (mean * rng.uniform(0.05, 0.8)) ** 2
        res = approximate(SumSpec([mean], [[var]], [1.0]), TPair(-1.0, -0.2))
        worst = max(worst, abs(res.lognormal_mean - mean) / mean, abs(res.lognormal_variance - var) / var)
    verdict("C7 n=1 identity reduction", worst <= 1e-6, f"max rel err {worst:.1e} (tol 1e-6)")


def test_c08_jacobian_partials():
    worst = 0.0
    for mu, sigma, t in itertools.product(np.linspace(-2.0, 2.0, 5), np.linspace(0.2, 2.0, 5), (-1.0, -0.2)):
        analytic = univariate_mgf_partials(t, mu, sigma)
        numeric = central_difference(t, mu, sigma)
        for a, b in zip(analytic, numeric):
            worst = max(worst, abs(a - b) / abs(b))
    verdict("C8 analytic partials vs FD", worst <= 1e-6, f"max rel err {worst:.1e} over 50 points (tol 1e-6)")


def test_c09_decorrelation_identity():
    rng = np.random.default_rng(9)
    worst = 0.0
    for n in range(1, 7):
        for _ in range(5):
            cov = random_pd(rng, n)
            l = cholesky_lower(cov)
            linv = np.linalg.inv(l)
            worst = max(worst, float(np.max(np.abs(0.5 * linv @ cov @ linv.T - 0.5 * np.eye(n)))))
    verdict("C9 decorrelation identity", worst <= 1e-9, f"max elementwise err {worst:.1e}, n<=6 (tol 1e-9)")


def test_c10_thread_reproducibility():
    spec = finance_spec(0.5)
    grid = default_grid(3.0, 3000)
    csvs = [simulate_cdf(spec, grid, SimConfig(3_000_000, seed=123, threads=t)).to_csv() for t in (1, 2, 8)]
    verdict("C10 simulator reproducibility", len(set(csvs)) == 1, "threads 1, 2, 8 give byte-identical CSV")


def test_c11_tuner_dominance():
    spec = finance_spec(0.75)
    truth = simulate_cdf(spec, default_grid(3.0, 3000), SimConfig(10**6, seed=0))
    config = TunerConfig(100, 10)
    assert (config.t_value(10), config.t_value(2)) == (-1.0, -0.2)
    res = optimize_tset(spec, truth, config)
    baseline = objective(approximate(spec, TPair(-1.0, -0.2)), truth)
    verdict("C11 tuner dominance", res.best_score <= baseline,
            f"best {res.best_score:.4g} at {tuple(res.best_tpair)} vs {baseline:.4g} at (-1.0, -0.2)")
