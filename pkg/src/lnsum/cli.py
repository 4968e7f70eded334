"""Command-line front end: ``lnsum approx | simulate | optimize | table2``."""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .approximator import STANDARD_PROBABILITIES, approximate, moment_matched, prepare
from .errors import LnSumError, NumericalError, ValidationError
from .mgf import TPair
from .moments import SumSpec, sum_mean_var
from .montecarlo import CdfGrid, SimConfig, default_grid, simulate_cdf
from .presets import FINANCE_ALPHAS, finance_spec
from .solver import SolverConfig, initial_point
from .tuner import WEIGHT_PRESETS, TunerConfig, band_weights, objective, optimize_tset

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2

DEFAULT_T = (-1.0, -0.2)
DEFAULT_SEED = 0
DEFAULT_GRID = (3.0, 3000)
TABLE_GRID = (3.0, 30000)


def fmt(x):
    return f"{x:.10g}"


@dataclass
class Problem:
    spec: SumSpec
    t: tuple | None = None
    sim: dict | None = None
    grid: object = None


def load_problem(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"problem file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("problem file must hold a JSON object")
    missing = [k for k in ("means", "cov", "weights") if k not in raw]
    if missing:
        raise ValidationError(f"problem file is missing {', '.join(missing)}")
    try:
        spec = SumSpec(raw["means"], raw["cov"], raw["weights"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed problem arrays: {exc}") from exc
    t = raw.get("t")
    if t is not None and (not isinstance(t, list) or len(t) != 2):
        raise ValidationError("'t' must be a 2-element array")
    return Problem(spec, tuple(t) if t else None, raw.get("sim"), raw.get("grid"))


def _solver_config(args):
    return SolverConfig(epsilon=args.epsilon, max_iterations=args.max_iter)


def _sim_config(args, problem):
    sim = problem.sim or {}
    n = args.n if args.n is not None else sim.get("n", 1_000_000)
    seed = args.seed if args.seed is not None else sim.get("seed", DEFAULT_SEED)
    threads = args.threads if args.threads is not None else sim.get("threads", 0)
    return SimConfig(int(n), int(seed), int(threads))


def _grid(args, problem):
    if args.grid_h is not None or args.grid_k is not None:
        h = args.grid_h if args.grid_h is not None else DEFAULT_GRID[0]
        k = args.grid_k if args.grid_k is not None else DEFAULT_GRID[1]
        return default_grid(h, k)
    grid = problem.grid
    if grid is None:
        return default_grid(*DEFAULT_GRID)
    if isinstance(grid, list):
        return np.asarray(grid, dtype=float)
    if isinstance(grid, dict) and "domain" in grid:
        return np.asarray(grid["domain"], dtype=float)
    if isinstance(grid, dict):
        return default_grid(float(grid.get("h", DEFAULT_GRID[0])), int(grid.get("k", DEFAULT_GRID[1])))
    raise ValidationError("'grid' must be {h, k}, {domain: [...]} or an array")


def _weight_fn(name):
    if name in WEIGHT_PRESETS:
        return WEIGHT_PRESETS[name]
    try:
        with open(name) as fh:
            raw = json.load(fh)
        return band_weights(raw["breaks"], raw["weights"])
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        presets = ", ".join(WEIGHT_PRESETS)
        raise ValidationError(f"--weights must be one of {presets} or a band file: {exc}") from exc


def _quantile_row(result):
    return [float(result.quantile(p)) for p in STANDARD_PROBABILITIES]


def _print_trace(spec, out):
    normal = prepare(spec)
    corr = normal.correlation()
    for i, m in enumerate(normal.means):
        out.write(f"mu_x{i + 1} = {fmt(m)}\n")
    for i in range(normal.n):
        out.write(f"sigma2_x{i + 1} = {fmt(normal.cov[i, i])}\n")
    for i in range(normal.n):
        for j in range(i + 1, normal.n):
            out.write(f"cov_x{i + 1}x{j + 1} = {fmt(normal.cov[i, j])}\n")
            out.write(f"rho_x{i + 1}x{j + 1} = {fmt(corr[i, j])}\n")
    e, v = sum_mean_var(spec)
    mu0, sigma0 = initial_point(spec)
    out.write(f"E[S] = {fmt(e)}\nV[S] = {fmt(v)}\n")
    out.write(f"start mu_x = {fmt(mu0)}\nstart sigma_x = {fmt(sigma0)}\n")


def cmd_approx(args, out):
    problem = load_problem(args.problem)
    t = tuple(args.t) if args.t else problem.t or DEFAULT_T
    if args.verbose:
        _print_trace(problem.spec, out)
    result = approximate(problem.spec, TPair(*t), _solver_config(args))
    c1, c2 = result.constants
    out.write(f"t = {fmt(t[0])} {fmt(t[1])}\n")
    if args.verbose:
        out.write(f"C1 = {fmt(c1)}\nC2 = {fmt(c2)}\n")
    out.write(f"lognormal_mean = {fmt(result.lognormal_mean)}\n")
    out.write(f"lognormal_variance = {fmt(result.lognormal_variance)}\n")
    out.write(f"normal_mu = {fmt(result.normal_mu)}\n")
    out.write(f"normal_sigma = {fmt(result.normal_sigma)}\n")
    out.write(f"iterations = {result.solver.iterations}\n")
    out.write(f"residual = {result.solver.final_residual:.3e}\n")
    if args.quantiles:
        out.write("p," + ",".join(f"{p:.2f}" for p in STANDARD_PROBABILITIES) + "\n")
        out.write("s," + ",".join(f"{q:.4f}" for q in _quantile_row(result)) + "\n")
    return EXIT_OK


def cmd_simulate(args, out):
    problem = load_problem(args.problem)
    config = _sim_config(args, problem)
    grid = simulate_cdf(problem.spec, _grid(args, problem), config)
    print(f"seed={config.seed} n={config.sample_size} threads={config.resolved_threads()}", file=sys.stderr)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            grid.to_csv(fh)
    else:
        grid.to_csv(out)
    return EXIT_OK


def cmd_optimize(args, out):
    problem = load_problem(args.problem)
    try:
        with open(args.truth) as fh:
            truth = CdfGrid.from_csv(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read truth CSV: {exc}") from exc
    config = TunerConfig(args.ul, args.prec, _weight_fn(args.weights), args.threads or 1)
    res = optimize_tset(problem.spec, truth, config, _solver_config(args))
    out.write(f"weights = {args.weights}\n")
    out.write(f"pairs = {config.pair_count} (evaluated {res.evaluated}, skipped {res.skipped})\n")
    out.write(f"best_score = {fmt(res.best_score)}\n")
    out.write(f"best_t = {fmt(res.best_tpair.t1)} {fmt(res.best_tpair.t2)}\n")
    out.write(f"lognormal_mean = {fmt(res.best_result.lognormal_mean)}\n")
    out.write(f"lognormal_variance = {fmt(res.best_result.lognormal_variance)}\n")
    if args.weights != "uniform":
        unweighted = objective(res.best_result, truth)
        out.write(f"unweighted_score = {fmt(unweighted)}\n")
    return EXIT_OK


def table2_rows(alphas, config, solver_config=SolverConfig()):
    """Rows ``(method, alpha, quantiles...)`` comparing simulation, M-M and two MGF fits."""
    rows = []
    grid = default_grid(*TABLE_GRID)
    methods = []
    for alpha in alphas:
        spec = finance_spec(alpha)
        sim = simulate_cdf(spec, grid, config)
        methods.append(("Simulation", alpha, [sim.quantile(p) for p in STANDARD_PROBABILITIES]))
        methods.append(("M-M", alpha, _quantile_row(moment_matched(spec))))
        methods.append(("MGF(1)", alpha, _quantile_row(approximate(spec, (-1.0, -0.2), solver_config))))
        methods.append(("MGF(2)", alpha, _quantile_row(approximate(spec, (-0.001, -0.005), solver_config))))
    order = ["Simulation", "M-M", "MGF(1)", "MGF(2)"]
    for name in order:
        rows += [m for m in methods if m[0] == name]
    return rows


def cmd_table2(args, out):
    n = args.n if args.n is not None else 10_000_000
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    config = SimConfig(n, seed, args.threads or 0)
    rows = table2_rows(args.alpha, config, _solver_config(args))
    text = [f"# seed={seed}", f"# n={n}"]
    text.append("method,alpha," + ",".join(f"{p:.2f}" for p in STANDARD_PROBABILITIES))
    for name, alpha, qs in rows:
        text.append(f"{name},{alpha:.2f}," + ",".join(f"{q:.4f}" for q in qs))
    body = "\n".join(text) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(body)
    else:
        out.write(body)
    return EXIT_OK


def _add_solver_flags(p):
    p.add_argument("--epsilon", type=float, default=1e-10, help="convergence threshold on max |residual|")
    p.add_argument("--max-iter", type=int, default=200, help="Newton iteration cap")


def _add_sim_flags(p):
    p.add_argument("--n", type=int, help="simulation sample size")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--threads", type=int, help="worker threads, 0 = all cores")


def build_parser():
    parser = argparse.ArgumentParser(prog="lnsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="fit the approximating lognormal")
    p.add_argument("problem", help="JSON problem file")
    p.add_argument("--t", type=float, nargs=2, metavar=("T1", "T2"), help="negative MGF arguments")
    p.add_argument("--quantiles", "--alpha-row", action="store_true", help="print the quantile row")
    p.add_argument("--verbose", action="store_true", help="print the parameter derivation")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("simulate", help="Monte-Carlo CDF of the sum as CSV")
    p.add_argument("problem")
    _add_sim_flags(p)
    p.add_argument("--grid-h", type=float, help="upper end of the domain grid")
    p.add_argument("--grid-k", type=int, help="number of grid points")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("optimize", help="grid-search the t-set against a simulated CDF")
    p.add_argument("problem")
    p.add_argument("--truth", required=True, help="CSV written by 'simulate'")
    p.add_argument("--ul", type=int, default=100, help="upper limit of the integer t index")
    p.add_argument("--prec", type=int, default=10, help="t = -index / (ul // prec)")
    p.add_argument("--weights", default="uniform", help="preset (uniform, three-band) or band JSON file")
    p.add_argument("--threads", type=int, help="worker threads")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("table2", help="portfolio comparison of simulation, M-M and MGF fits")
    p.add_argument("--alpha", type=float, nargs="+", default=list(FINANCE_ALPHAS))
    _add_sim_flags(p)
    p.add_argument("--out")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_table2)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except LnSumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
