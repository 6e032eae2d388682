"""Particle containers, tolerance schedules, run configuration and traces."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from ..errors import DegenerateWeightsError, InvalidInputError
from ..kernels import GaussianKernel
from ..model import UniformPrior

DEFAULT_MAX_SIM_CALLS = 10_000_000


class ScheduleWarning(UserWarning):
    """Tolerance schedule is not nonincreasing."""


@dataclass(frozen=True, eq=False)
class ParticleSet:
    """N particle values with normalised weights at iteration ``iteration``.

    ``distances`` holds, when known, the summary distance that earned each
    particle its acceptance; ``sim_calls`` the simulator calls spent.
    """

    values: np.ndarray
    weights: np.ndarray
    iteration: int = 0
    distances: Optional[np.ndarray] = None
    sim_calls: Optional[int] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        weights = np.array(self.weights, dtype=float).ravel()
        if values.size == 0:
            raise InvalidInputError("a particle set needs at least one particle")
        if weights.shape != values.shape:
            raise InvalidInputError(
                f"{values.size} values but {weights.size} weights"
            )
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise InvalidInputError("weights must be finite and nonnegative")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise InvalidInputError(f"weights sum to {weights.sum()!r}, not 1")
        if self.iteration < 0:
            raise InvalidInputError("iteration must be >= 0")
        values.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        if self.distances is not None:
            d = np.array(self.distances, dtype=float).ravel()
            if d.shape != values.shape:
                raise InvalidInputError("distances must match values in length")
            d.flags.writeable = False
            object.__setattr__(self, "distances", d)

    @classmethod
    def equal(cls, values, iteration=0, **kw):
        values = np.asarray(values, dtype=float).ravel()
        n = values.size
        return cls(values, np.full(n, 1.0 / n) if n else np.empty(0), iteration, **kw)

    @classmethod
    def from_unnormalized(cls, values, weights, iteration=0, **kw):
        weights = np.asarray(weights, dtype=float).ravel()
        total = weights.sum()
        if not total > 0 or not math.isfinite(total):
            raise DegenerateWeightsError(f"weights cannot be normalised (sum={total!r})")
        w = weights / total
        # absorb the last-ulp drift so the sum check holds
        w /= w.sum()
        return cls(values, w, iteration, **kw)

    def __len__(self):
        return self.values.size

    @cached_property
    def cdf(self) -> np.ndarray:
        return np.cumsum(self.weights)

    @property
    def is_equally_weighted(self) -> bool:
        return bool(np.all(self.weights == self.weights[0]))


def resample(pset: ParticleSet, count: int, rng) -> np.ndarray:
    """Draw ``count`` values with replacement, probability proportional to weight."""
    if count < 0:
        raise InvalidInputError(f"count must be >= 0, got {count}")
    cdf = pset.cdf
    total = cdf[-1]
    if not total > 0:
        raise DegenerateWeightsError("all particle weights are zero")
    u = rng.uniform(count) * total
    idx = np.searchsorted(cdf, u, side="right")
    np.minimum(idx, len(pset) - 1, out=idx)
    return pset.values[idx]


@dataclass(frozen=True)
class ToleranceSchedule:
    epsilons: tuple

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        if not eps:
            raise InvalidInputError("a tolerance schedule needs at least one entry")
        for k, e in enumerate(eps):
            if not e > 0:
                raise InvalidInputError(f"tolerance {k + 1} must be > 0, got {e}")
        if any(b > a for a, b in zip(eps, eps[1:])):
            warnings.warn("tolerance schedule is not nonincreasing", ScheduleWarning, stacklevel=3)
        object.__setattr__(self, "epsilons", eps)

    @classmethod
    def constant(cls, eps, length):
        return cls((eps,) * length)

    def __len__(self):
        return len(self.epsilons)

    def __getitem__(self, k):
        return self.epsilons[k]

    def __iter__(self):
        return iter(self.epsilons)


@dataclass(frozen=True)
class SamplerConfig:
    """Settings for the sequential samplers.

    ``threads=None`` runs the single-stream reference mode. Any integer
    switches to per-slot streams derived from (seed, t, i); results are then
    identical for every thread count.
    """

    n_particles: int
    schedule: ToleranceSchedule
    kernel: GaussianKernel
    prior: UniformPrior = field(default_factory=UniformPrior)
    seed: int = 0
    max_sim_calls_per_iteration: int = DEFAULT_MAX_SIM_CALLS
    checkpoint_count: int = 20
    threads: Optional[int] = None

    def __post_init__(self):
        if self.n_particles < 1:
            raise InvalidInputError("n_particles must be >= 1")
        if self.max_sim_calls_per_iteration < 1:
            raise InvalidInputError("max_sim_calls_per_iteration must be >= 1")
        if self.checkpoint_count < 1:
            raise InvalidInputError("checkpoint_count must be >= 1")
        if self.threads is not None and self.threads < 1:
            raise InvalidInputError("threads must be >= 1 or None")
        if not isinstance(self.schedule, ToleranceSchedule):
            object.__setattr__(self, "schedule", ToleranceSchedule(tuple(self.schedule)))


def checkpoint_iterations(n_iter: int, count: int) -> np.ndarray:
    """Iterations (1-based) at which the accepted set is recorded.

    ``count`` is clamped to ``n_iter``; the points are evenly spread from 1
    to ``n_iter`` and rounded half-to-even.
    """
    count = min(count, n_iter)
    if count == 1:
        return np.array([n_iter])
    return np.unique(np.round(np.linspace(1, n_iter, count)).astype(int))


@dataclass(frozen=True)
class Checkpoint:
    iteration: int
    epsilon: float
    particles: ParticleSet


@dataclass
class RunTrace:
    checkpoints: list = field(default_factory=list)
    sim_call_count: int = 0
    # (accepted, proposed) per iteration, in iteration order
    acceptance_counts: list = field(default_factory=list)
    final_weights: Optional[np.ndarray] = None

    @property
    def final(self) -> Checkpoint:
        return self.checkpoints[-1]

    def validate(self):
        its = [c.iteration for c in self.checkpoints]
        if any(b <= a for a, b in zip(its, its[1:])):
            raise InvalidInputError(f"checkpoint iterations not strictly increasing: {its}")
