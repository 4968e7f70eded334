import numpy as np
import pytest

from lnsum.presets import finance_spec, worked_example_spec


@pytest.fixture
def worked():
    return worked_example_spec()


@pytest.fixture(params=[0.25, 0.50, 0.75], ids=lambda a: f"alpha={a}")
def finance(request):
    return finance_spec(request.param)


def random_pd(rng, n, scale=1.0):
    a = rng.normal(size=(n, n))
    return scale * (a.T @ a + np.eye(n))


def random_spec(rng, n, max_cv=0.6):
    """Random valid SumSpec with moderate lognormal coefficients of variation."""
    from lnsum.approximator import prepare
    from lnsum.errors import ValidationError
    from lnsum.moments import SumSpec

    while True:
        means = rng.uniform(0.5, 2.0, n)
        sd = means * rng.uniform(0.05, max_cv, n)
        a = rng.normal(size=(n, n))
        c = a.T @ a + n * np.eye(n)
        d = np.sqrt(np.diag(c))
        corr = c / np.outer(d, d)
        cov = corr * np.outer(sd, sd)
        cov = 0.5 * (cov + cov.T)
        spec = SumSpec(means, cov, rng.uniform(0.2, 2.0, n))
        try:
            prepare(spec)
        except ValidationError:
            continue
        return spec


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    if module is None or not module.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.REPORT:
        terminalreporter.write_line(line)
