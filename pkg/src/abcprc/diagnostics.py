"""Moments, convergence traces and distribution distance against the oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import InvalidInputError
from .model import PosteriorSummary


@dataclass(frozen=True)
class TracePoint:
    iteration: int
    mean: float
    variance: float
    epsilon: float = math.nan
    sim_calls: int = 0
    acceptance_rate: float = math.nan


@dataclass(frozen=True)
class ConvergenceTrace:
    points: tuple
    reference_variance: float

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        its = [p.iteration for p in self.points]
        if any(b <= a for a, b in zip(its, its[1:])):
            raise InvalidInputError(f"trace iterations not strictly increasing: {its}")
        if any(p.variance < 0 for p in self.points):
            raise InvalidInputError("negative variance in trace")

    @property
    def final(self) -> TracePoint:
        return self.points[-1]

    @property
    def variances(self) -> np.ndarray:
        return np.array([p.variance for p in self.points])


def posterior_stats(pset) -> tuple[float, float]:
    """Weighted mean and population (1/N) variance of a particle set."""
    values, weights = pset.values, pset.weights
    if len(values) < 2:
        raise InvalidInputError("variance needs at least two particles")
    if pset.is_equally_weighted:
        mean = float(values.mean())
        return mean, float(np.mean((values - mean) ** 2))
    mean = float(np.dot(weights, values))
    return mean, float(np.dot(weights, (values - mean) ** 2))


def build_trace(trace, oracle: PosteriorSummary) -> ConvergenceTrace:
    if not trace.checkpoints:
        raise InvalidInputError("run trace has no checkpoints")
    points = []
    for cp in trace.checkpoints:
        mean, var = posterior_stats(cp.particles)
        calls = cp.particles.sim_calls or 0
        rate = len(cp.particles) / calls if calls else math.nan
        points.append(TracePoint(cp.iteration, mean, var, cp.epsilon, calls, rate))
    return ConvergenceTrace(tuple(points), oracle.variance)


def ks_statistic(samples, oracle: PosteriorSummary) -> float:
    """Kolmogorov-Smirnov distance between the sample ECDF and the oracle normal CDF."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise InvalidInputError("ks_statistic needs at least one sample")
    cdf = ndtr((x - oracle.mean) / math.sqrt(oracle.variance))
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def ks_critical_value(n: int, alpha: float = 0.01) -> float:
    """Exact one-sample two-sided Kolmogorov critical value."""
    from scipy.stats import kstwo

    return float(kstwo.ppf(1.0 - alpha, n))


def batch_means_se(chain, n_batches: int = 50) -> float:
    """Standard error of a chain's variance estimate by batch means."""
    chain = np.asarray(chain, dtype=float)
    m = chain.size // n_batches
    if m < 2:
        raise InvalidInputError("chain too short for batch means")
    mean = chain.mean()
    sq = ((chain[: m * n_batches] - mean) ** 2).reshape(n_batches, m).mean(axis=1)
    return float(sq.std(ddof=1) / math.sqrt(n_batches))
