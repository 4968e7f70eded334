"""Problem definitions used by the worked example and the portfolio table."""

from .moments import SumSpec

# Real compounding returns: stocks LogNormal(mean 1.0837, sd 0.2153),
# bonds LogNormal(mean 1.0214, sd 0.0825), covariance 0.00078.
FINANCE_MEANS = (1.0837, 1.0214)
FINANCE_COV = ((0.04635409, 0.00078), (0.00078, 0.00680625))
FINANCE_ALPHAS = (0.25, 0.50, 0.75)


def finance_spec(alpha):
    """Stock/bond portfolio with equity ratio ``alpha``."""
    return SumSpec(FINANCE_MEANS, FINANCE_COV, (alpha, 1.0 - alpha))


def worked_example_spec():
    """Means (1, 2), variances (3, 4), covariance 1.73, weights (1.5, 2.5)."""
    return SumSpec((1.0, 2.0), ((3.0, 1.73), (1.73, 4.0)), (1.5, 2.5))
