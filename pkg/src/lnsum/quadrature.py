"""Fixed 12-point Gauss-Hermite rule for integrals against exp(-u**2)."""

from dataclasses import dataclass

import numpy as np

# (positive root, weight) for n=12, Abramowitz & Stegun table 25.10.
# Kept as decimal strings so the parsed doubles never depend on a root finder.
_TABLE = (
    ("0.314240376254", "0.57013523626250000"),
    ("0.947788391240", "0.26049231026420000"),
    ("1.597682635153", "0.05160798561588000"),
    ("2.279507080501", "0.003905390584629000"),
    ("3.020637025121", "0.000085736870435880"),
    ("3.889724897870", "0.000000265855168436"),
)

ORDER = 12


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes and weights, ordered as (-r1, +r1, -r2, +r2, ...)."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def hermite_sum(self, g):
        """Return ``sum_j w_j * g(t_j)``, the rule's estimate of ``int g(u) exp(-u^2) du``.

        ``g`` is called once per node with a Python float. Non-finite values
        are not trapped; they propagate into the result.
        """
        total = 0.0
        for t, w in zip(self.nodes, self.weights):
            total += w * g(float(t))
        return float(total)


def _build_rule():
    nodes, weights = [], []
    for root, weight in _TABLE:
        r, w = float(root), float(weight)
        nodes += [-r, r]
        weights += [w, w]
    return QuadratureRule(np.array(nodes), np.array(weights))


RULE = _build_rule()
NODES = RULE.nodes
WEIGHTS = RULE.weights


def hermite_sum(g):
    """Module-level shortcut for ``RULE.hermite_sum(g)``."""
    return RULE.hermite_sum(g)
