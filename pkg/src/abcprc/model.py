"""Gaussian mean with known variance: simulator, summary, distance and the
exact conjugate posterior used as ground truth."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

# ybar and n of the data set used throughout the experiments; the raw
# observations were never published, only these two numbers.
PAPER_YBAR = 4.786624
PAPER_N = 10
PAPER_SIGMA2 = 9.0


@dataclass(frozen=True)
class GaussianModelSpec:
    """Known-variance Gaussian model with a Normal(mu0, tau2) prior on the mean.

    ``tau2 = math.inf`` encodes the flat improper prior.
    """

    ybar: float
    n: int
    sigma2: float
    mu0: float = 0.0
    tau2: float = math.inf

    def __post_init__(self):
        if not self.sigma2 > 0 or math.isinf(self.sigma2):
            raise InvalidInputError(f"sigma2 must be finite and > 0, got {self.sigma2}")
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n}")
        if not self.tau2 > 0:
            raise InvalidInputError(f"tau2 must be > 0 or inf, got {self.tau2}")
        if not math.isfinite(self.ybar) or not math.isfinite(self.mu0):
            raise InvalidInputError("ybar and mu0 must be finite")

    @classmethod
    def from_observations(cls, y, sigma2, mu0=0.0, tau2=math.inf):
        y = np.asarray(y, dtype=float)
        return cls(ybar=summarize(y), n=len(y), sigma2=sigma2, mu0=mu0, tau2=tau2)

    @classmethod
    def paper(cls):
        return cls(ybar=PAPER_YBAR, n=PAPER_N, sigma2=PAPER_SIGMA2)

    @property
    def summary_variance(self) -> float:
        """Variance of the simulated summary around theta, sigma2 / n."""
        return self.sigma2 / self.n


@dataclass(frozen=True)
class PosteriorSummary:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise InvalidInputError(f"posterior variance must be > 0, got {self.variance}")

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class UniformPrior:
    lo: float = -15.0
    hi: float = 15.0

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise InvalidInputError(f"need finite lo < hi, got ({self.lo}, {self.hi})")

    def sample(self, rng, size=None):
        return self.lo + (self.hi - self.lo) * rng.uniform(size)

    def contains(self, theta):
        return (theta >= self.lo) & (theta <= self.hi)

    def density(self, theta):
        inside = self.contains(np.asarray(theta, dtype=float))
        return np.where(inside, 1.0 / (self.hi - self.lo), 0.0)


def summarize(y) -> float:
    y = np.asarray(y, dtype=float).ravel()
    if y.size == 0:
        raise InvalidInputError("cannot summarise an empty observation vector")
    return float(y.mean())


def analytic_posterior(spec: GaussianModelSpec) -> PosteriorSummary:
    data_precision = spec.n / spec.sigma2
    if math.isinf(spec.tau2):
        return PosteriorSummary(mean=spec.ybar, variance=spec.sigma2 / spec.n)
    prior_precision = 1.0 / spec.tau2
    precision = prior_precision + data_precision
    mean = (spec.mu0 * prior_precision + spec.ybar * data_precision) / precision
    return PosteriorSummary(mean=mean, variance=1.0 / precision)


def simulate_summary(theta, spec: GaussianModelSpec, rng):
    """Mean of ``spec.n`` Normal(theta, sigma2) draws.

    ``theta`` may be an array, in which case one summary is simulated per
    entry (the draws form a ``theta.shape + (n,)`` block).
    """
    theta = np.asarray(theta, dtype=float)
    draws = rng.generator.normal(0.0, math.sqrt(spec.sigma2), theta.shape + (spec.n,))
    out = theta + draws.mean(axis=-1)
    return float(out) if out.ndim == 0 else out


def distance(s_sim, s_obs):
    """Absolute difference of summaries; vectorised over ``s_sim``."""
    if np.ndim(s_sim):
        return np.abs(np.asarray(s_sim, dtype=float) - s_obs)
    return abs(float(s_sim) - float(s_obs))
