"""Gaussian perturbation kernel and the reciprocal-density particle weights."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeightsError, InvalidInputError

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# rows of the N x N density block evaluated at once; bounds peak memory
_CHUNK = 1024


@dataclass(frozen=True)
class GaussianKernel:
    xi2: float
    mean_offset: float = 0.0

    def __post_init__(self):
        if not self.xi2 > 0 or math.isinf(self.xi2):
            raise InvalidInputError(f"kernel variance must be finite and > 0, got {self.xi2}")

    @property
    def scale(self) -> float:
        return math.sqrt(self.xi2)

    def perturb(self, theta, rng):
        theta = np.asarray(theta, dtype=float)
        out = theta + rng.generator.normal(self.mean_offset, self.scale, theta.shape)
        return float(out) if out.ndim == 0 else out

    def density(self, x, center):
        """Density of moving from ``center`` to ``x``."""
        return kernel_density(x, np.asarray(center) + self.mean_offset, self.xi2)


def perturb(theta, kernel: GaussianKernel, rng):
    return kernel.perturb(theta, rng)


def kernel_density(x, center, xi2):
    """Normal(center, xi2) density at x (broadcasts)."""
    if not xi2 > 0:
        raise InvalidInputError(f"kernel variance must be > 0, got {xi2}")
    z2 = (np.asarray(x, dtype=float) - center) ** 2 / xi2
    out = np.exp(-0.5 * z2 - _LOG_SQRT_2PI) / math.sqrt(xi2)
    return float(out) if np.ndim(out) == 0 else out


def corrected_weights(perturbed, sources, kernel: GaussianKernel):
    """Unnormalised weights ``1 / sum_j K(perturbed_i | sources_j)``.

    Each perturbed particle is weighted by the reciprocal of the kernel
    density estimate built on the pre-perturbation accepted set.
    """
    perturbed = np.asarray(perturbed, dtype=float).ravel()
    sources = np.asarray(sources, dtype=float).ravel()
    if sources.size == 0:
        raise InvalidInputError("corrected_weights needs at least one source particle")
    centers = sources + kernel.mean_offset
    sums = np.empty(perturbed.size)
    for start in range(0, perturbed.size, _CHUNK):
        block = perturbed[start:start + _CHUNK, None]
        # sum along axis 1 runs over sources in index order
        sums[start:start + _CHUNK] = kernel_density(block, centers[None, :], kernel.xi2).sum(axis=1)
    with np.errstate(divide="ignore", over="ignore"):
        weights = 1.0 / sums
    # a zero or subnormal density sum leaves no finite weight
    bad = np.flatnonzero(~np.isfinite(weights))
    if bad.size:
        i = int(bad[0])
        raise DegenerateWeightsError(
            f"particle {i} (value {float(perturbed[i])!r}) has (near-)zero kernel density "
            f"under every source",
            index=i,
        )
    return weights
