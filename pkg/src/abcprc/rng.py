"""Seedable, splittable random streams.

Streams are derived from a master seed and an integer path by hashing
(numpy's ``SeedSequence``), so ``derive(seed, [t, i])`` can be computed
by any worker without shared state.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvalidInputError

_SEED_MASK = (1 << 64) - 1


class RandomStream:
    """A single-owner random stream with recorded provenance.

    Not thread-safe; give each worker its own stream via :func:`derive`.
    """

    __slots__ = ("seed", "path", "generator")

    def __init__(self, seed: int, path: Sequence[int] = ()):
        self.seed = int(seed) & _SEED_MASK
        self.path = tuple(int(p) for p in path)
        if any(p < 0 for p in self.path):
            raise InvalidInputError(f"derivation path entries must be >= 0, got {self.path}")
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        self.generator = np.random.Generator(np.random.PCG64(ss))

    @property
    def provenance(self) -> tuple[int, tuple[int, ...]]:
        return self.seed, self.path

    def child(self, *path: int) -> "RandomStream":
        return RandomStream(self.seed, self.path + tuple(path))

    def uniform(self, size=None):
        """Uniform variate(s) on [0, 1)."""
        return self.generator.random(size)

    def gaussian(self, mean=0.0, variance=1.0, size=None):
        if not variance > 0:
            raise InvalidInputError(f"variance must be > 0, got {variance}")
        return self.generator.normal(mean, np.sqrt(variance), size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, path={list(self.path)})"


def derive(master_seed: int, path: Sequence[int] = ()) -> RandomStream:
    return RandomStream(master_seed, path)


def next_uniform(stream: RandomStream) -> float:
    return float(stream.uniform())


def next_gaussian(stream: RandomStream, mean: float = 0.0, variance: float = 1.0) -> float:
    return float(stream.gaussian(mean, variance))


def as_stream(rng) -> RandomStream:
    """Accept a RandomStream or an integer seed."""
    if isinstance(rng, RandomStream):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RandomStream(int(rng))
    raise InvalidInputError(f"expected RandomStream or int seed, got {type(rng).__name__}")
