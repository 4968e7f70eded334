"""Monte-Carlo estimate of the CDF of a weighted sum of correlated lognormals.

Samples are split into fixed-size blocks. Block ``b`` always draws from the
stream seeded by ``SeedSequence(seed, spawn_key=(b,))`` no matter which
worker runs it, so results do not depend on the thread count.
"""

import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .approximator import prepare
from .errors import ValidationError
from .moments import THETA

BLOCK_SIZE = 1 << 20


@dataclass(frozen=True)
class SimConfig:
    sample_size: int
    seed: int = 0
    threads: int = 0

    def __post_init__(self):
        if self.sample_size < 1:
            raise ValidationError(f"sample size must be >= 1, got {self.sample_size}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.threads < 0:
            raise ValidationError(f"threads must be >= 0, got {self.threads}")

    def resolved_threads(self):
        return self.threads or os.cpu_count() or 1


@dataclass(frozen=True)
class CdfGrid:
    """Domain values and ``P(S <= s)`` at each of them."""

    domain: np.ndarray
    probabilities: np.ndarray
    sample_size: int | None = None
    seed: int | None = None

    def __post_init__(self):
        domain = np.asarray(self.domain, dtype=float)
        probs = np.asarray(self.probabilities, dtype=float)
        if domain.ndim != 1 or domain.size == 0:
            raise ValidationError("CDF grid must have at least one domain value")
        if probs.shape != domain.shape:
            raise ValidationError("CDF grid domain and probabilities differ in length")
        if np.any(np.diff(domain) <= 0):
            raise ValidationError("CDF grid domain must be strictly increasing")
        if np.any(np.diff(probs) < 0):
            raise ValidationError("CDF grid probabilities must be non-decreasing")
        if np.any((probs < 0) | (probs > 1)):
            raise ValidationError("CDF grid probabilities must lie in [0, 1]")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "probabilities", probs)

    def __len__(self):
        return self.domain.size

    def quantile(self, p):
        """Smallest domain value reaching probability ``p``, linearly interpolated."""
        probs, dom = self.probabilities, self.domain
        k = int(np.searchsorted(probs, p, side="left"))
        if k >= len(dom):
            raise ValidationError(f"probability {p} is beyond the grid's last value {probs[-1]}")
        if k == 0 or probs[k] == probs[k - 1]:
            return float(dom[k])
        frac = (p - probs[k - 1]) / (probs[k] - probs[k - 1])
        return float(dom[k - 1] + frac * (dom[k] - dom[k - 1]))

    def to_csv(self, out=None):
        """Write ``s,p`` rows preceded by ``#`` metadata lines; returns the text."""
        buf = io.StringIO()
        if self.seed is not None:
            buf.write(f"# seed={self.seed}\n")
        if self.sample_size is not None:
            buf.write(f"# n={self.sample_size}\n")
        buf.write("s,p\n")
        for s, p in zip(self.domain, self.probabilities):
            buf.write(f"{s:.10g},{p:.10g}\n")
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text

    @classmethod
    def from_csv(cls, lines):
        meta = {}
        rows = []
        header_seen = False
        for raw in lines:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
                continue
            if not header_seen:
                if line.replace(" ", "") != "s,p":
                    raise ValidationError(f"expected CSV header 's,p', got {line!r}")
                header_seen = True
                continue
            try:
                s, p = (float(x) for x in line.split(","))
            except ValueError as exc:
                raise ValidationError(f"bad CSV row {line!r}") from exc
            rows.append((s, p))
        if not rows:
            raise ValidationError("CSV contains no data rows")
        domain, probs = zip(*rows)
        n = int(meta["n"]) if "n" in meta else None
        seed = int(meta["seed"]) if "seed" in meta else None
        return cls(np.array(domain), np.array(probs), n, seed)


def default_grid(h, k):
    """``k`` evenly spaced points ``(i+1)*h/k``, ending at ``h``."""
    if not h > 0:
        raise ValidationError(f"grid upper bound must be > 0, got {h}")
    if k < 1:
        raise ValidationError(f"grid needs at least one point, got k={k}")
    return (np.arange(k) + 1.0) * (h / k)


def _blocks(sample_size):
    full, rest = divmod(sample_size, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * full
    if rest:
        sizes.append(rest)
    return sizes


def _block_sums(normal, weights, seed, block, size):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))
    z = rng.standard_normal((size, normal.n))
    u = z @ normal.chol.T + normal.means
    return np.exp(THETA * u) @ weights


def _run_blocks(worker, sizes, threads):
    tasks = list(enumerate(sizes))
    if threads <= 1 or len(tasks) == 1:
        return [worker(b, m) for b, m in tasks]
    # contiguous block ranges per worker; remainder goes to the last one
    per, extra = divmod(len(tasks), threads)
    chunks, start = [], 0
    for w in range(threads):
        stop = start + per + (extra if w == threads - 1 else 0)
        if stop > start:
            chunks.append(tasks[start:stop])
        start = stop
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(lambda chunk: [worker(b, m) for b, m in chunk], chunks)
        return [r for part in parts for r in part]


def sample_sum(spec, config, normal=None):
    """Draw ``config.sample_size`` values of S (mainly for diagnostics and tests)."""
    if normal is None:
        normal = prepare(spec)
    weights = np.asarray(spec.weights)
    parts = _run_blocks(
        lambda b, m: _block_sums(normal, weights, config.seed, b, m),
        _blocks(config.sample_size),
        config.resolved_threads(),
    )
    return np.concatenate(parts)


def simulate_cdf(spec, grid_domain, config, normal=None):
    """Empirical ``P(S <= s_k)`` on ``grid_domain`` from ``config.sample_size`` draws."""
    grid_domain = np.asarray(grid_domain, dtype=float)
    if grid_domain.ndim != 1 or grid_domain.size == 0:
        raise ValidationError("simulation grid must contain at least one value")
    if np.any(np.diff(grid_domain) <= 0):
        raise ValidationError("simulation grid must be strictly increasing")
    if normal is None:
        normal = prepare(spec)
    weights = np.asarray(spec.weights)

    def count(block, size):
        s = np.sort(_block_sums(normal, weights, config.seed, block, size))
        return np.searchsorted(s, grid_domain, side="right")

    counts = sum(_run_blocks(count, _blocks(config.sample_size), config.resolved_threads()))
    return CdfGrid(grid_domain, counts / config.sample_size, config.sample_size, config.seed)
